#pragma once

#include <string>
#include <vector>

#include "pwmod/piecewise.hpp"

namespace pwmod {

/// Exact complex rational (Gaussian rational).
struct CRat {
    Rat re, im;
    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    CRat conj() const { return {re, -im}; }
    Rat norm_sq() const { return re * re + im * im; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator/(const CRat& a, const CRat& b) {
        Rat d = b.norm_sq();
        if (d.is_zero()) throw std::domain_error("CRat: division by zero");
        CRat num = a * b.conj();
        return {num.re / d, num.im / d};
    }
    CRat operator-() const { return {-re, -im}; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    std::string str() const { return re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "i"; }
};

using CVec = std::vector<CRat>;
using CMat = std::vector<CVec>;

/// Rank of a matrix over the Gaussian rationals (exact Gaussian elimination).
size_t crat_rank(CMat m);

/// Basis of the (right) nullspace of m: all c with m c = 0.
std::vector<CVec> crat_nullspace(const CMat& m);

/// Submodule of the free module A^n for the k-point algebra A = C^k.
/// generators[i] is a k x n matrix: row omega is the generator's value in
/// C^n at the point omega. The generated submodule decomposes pointwise:
/// M_omega = span of the generator rows at omega.
struct FiniteAlgebraModule {
    int k = 0;
    int n = 0;
    std::vector<CMat> generators;
};

/// Character of A^n vanishing on M: evaluation at `omega` paired with a
/// nonzero c orthogonal to every generator value there.
struct DiscreteCharacter {
    int omega = 0;
    CVec c;
};

/// All vanishing characters, as complement bases per point. Empty iff
/// every M_omega = C^n.
std::vector<DiscreteCharacter> vanishing_characters(const FiniteAlgebraModule& m);

/// The character-based full-module test: true iff no character vanishes on
/// M. In the finite semisimple case this is equivalent to M = A^n.
bool check_fge1(const FiniteAlgebraModule& m);

/// Independent rank oracle: dim(M) as the rank of the full linear
/// generating family {e_omega * g_i} inside C^{k n}, without exploiting the
/// pointwise decomposition. M = A^n iff this equals k*n.
size_t module_dimension_bruteforce(const FiniteAlgebraModule& m);

// --- partition of unity and constructive module approximation --------------

/// Partition of unity subordinate to an open cover of [0,1]:
/// 0 <= rho_j <= 1, rho_j = 0 off V_j, sum rho_j = 1 exactly. rhos are
/// piecewise linear; indices align with the input cover (pruned cover sets
/// get the zero function).
struct CoverPartition {
    std::vector<Interval> cover;  // open intervals (lo, hi), may reach past [0,1]
    std::vector<PiecewiseFn<Rat>> rhos;
    std::vector<size_t> chain;    // indices of the greedy subcover actually used
};

CoverPartition partition_of_unity(const std::vector<Interval>& cover);

/// R^d-valued function on [0,1] with piecewise-polynomial coordinates.
using VecFn = std::vector<PiecewiseFn<Rat>>;

/// Thrown when the pointwise density hypothesis fails: the residual
/// direction is a vanishing character at t.
struct DensityWitnessError : std::runtime_error {
    DensityWitnessError(Rat t_, std::vector<Rat> dir, double res)
        : std::runtime_error("module_approximate: pointwise density fails at t = " + t_.str()),
          t(std::move(t_)), direction(std::move(dir)), residual(res) {}
    Rat t;
    std::vector<Rat> direction;
    double residual;
};

struct ApproximateResult {
    VecFn g;                      // element of the generated module
    std::vector<PiecewiseFn<Rat>> module_coeffs;  // algebra coefficients per generator
    size_t cover_sets = 0;        // size of the subcover used
    double distance = 0;          // sup-norm distance ||f - g||, double estimate
};

struct ApproximateOptions {
    int grid = 257;
    int max_refinements = 2;
};

/// Builds g = sum_j rho_j g_{t_j} in the module generated by `generators`
/// with ||f - g||_inf < eps (checked exactly). Requires the generator
/// values to span f(t) within eps/2 at every sample point; otherwise throws
/// DensityWitnessError carrying the witness character.
ApproximateResult module_approximate(const std::vector<VecFn>& generators, const VecFn& f,
                                     const Rat& eps, const ApproximateOptions& opts = {});

}  // namespace pwmod
