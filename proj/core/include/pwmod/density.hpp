#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pwmod/rational.hpp"

namespace pwmod {

/// Truncated coefficient pair (gamma_n), (delta_n), n = 1..N (stored
/// 0-based). Defines the family f_0 = e_0 + sum gamma_n e_n,
/// f_n = e_n - delta_n e_0 in the span of {e_0..e_N}. Tails beyond N are
/// zero; declared tail norms are carried for Cauchy-Schwarz reporting.
template <class R>
struct PerturbationPair {
    std::vector<R> gamma, delta;
    double tail_gamma_sq = 0;
    double tail_delta_sq = 0;

    size_t order() const { return gamma.size(); }
    PerturbationPair() = default;
    PerturbationPair(std::vector<R> g, std::vector<R> d) : gamma(std::move(g)), delta(std::move(d)) {
        if (gamma.size() != delta.size())
            throw std::invalid_argument("PerturbationPair: length mismatch");
    }
};

enum class DensityVerdict { dense, not_dense, indeterminate };

template <class R>
R span_sum(const PerturbationPair<R>& p) {
    R s(0);
    for (size_t i = 0; i < p.gamma.size(); ++i) s += p.gamma[i] * p.delta[i];
    return s;
}

/// Dense span iff sum gamma_n delta_n != -1. Exact in rational mode; in
/// float mode |s+1| <= 1e-10 is reported as indeterminate rather than
/// forced to a verdict.
template <class R>
DensityVerdict span_is_dense(const PerturbationPair<R>& p) {
    R s = span_sum(p);
    if constexpr (scalar_traits<R>::exact) {
        return s == R(-1) ? DensityVerdict::not_dense : DensityVerdict::dense;
    } else {
        double d = scalar_traits<R>::to_double(s) + 1.0;
        if (d < 0) d = -d;
        if (d <= scalar_traits<double>::tol) return DensityVerdict::indeterminate;
        return DensityVerdict::dense;
    }
}

/// Kernel of S = I + T when sum gamma delta = -1: the vector
/// v = e_0 - sum gamma_n e_n (coordinates over e_0..e_N). Returns nothing
/// when the span is dense. Satisfies <v,e_n> = -gamma_n <v,e_0>.
template <class R>
std::optional<std::vector<R>> kernel_vector(const PerturbationPair<R>& p) {
    R s = span_sum(p);
    bool critical;
    if constexpr (scalar_traits<R>::exact) {
        critical = (s == R(-1));
    } else {
        double d = scalar_traits<R>::to_double(s) + 1.0;
        critical = (d < 0 ? -d : d) <= scalar_traits<double>::tol;
    }
    if (!critical) return std::nullopt;
    std::vector<R> v(p.order() + 1, R(0));
    v[0] = R(1);
    for (size_t i = 0; i < p.order(); ++i) v[i + 1] = -p.gamma[i];
    return v;
}

/// The (N+1)x(N+1) matrix of S = I + T on span{e_0..e_N}: column 0 is
/// f_0 = (1, gamma_1..gamma_N), column n is f_n = e_n - delta_n e_0.
std::vector<std::vector<double>> s_matrix(const PerturbationPair<double>& p);

/// S v for the matrix above (brute-force application, used as an oracle).
std::vector<double> apply_s(const PerturbationPair<double>& p, const std::vector<double>& v);

/// Smallest singular value of S, via a self-contained cyclic Jacobi
/// eigensolver on S^T S. Independent oracle for the density criterion:
/// sigma_min > 0 iff the span is dense (at truncation order N).
double min_singular_oracle(const PerturbationPair<double>& p);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (ascending).
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a);

template <class R>
PerturbationPair<double> pair_to_double(const PerturbationPair<R>& p) {
    PerturbationPair<double> q;
    q.gamma.reserve(p.gamma.size());
    q.delta.reserve(p.delta.size());
    for (const auto& g : p.gamma) q.gamma.push_back(scalar_traits<R>::to_double(g));
    for (const auto& d : p.delta) q.delta.push_back(scalar_traits<R>::to_double(d));
    q.tail_gamma_sq = p.tail_gamma_sq;
    q.tail_delta_sq = p.tail_delta_sq;
    return q;
}

/// Cauchy-Schwarz bound on the unseen tail of sum gamma delta.
inline double tail_bound(double tail_gamma_sq, double tail_delta_sq) {
    double a = tail_gamma_sq < 0 ? 0 : tail_gamma_sq;
    double b = tail_delta_sq < 0 ? 0 : tail_delta_sq;
    double r = a * b;
    return r <= 0 ? 0 : std::sqrt(r);
}

}  // namespace pwmod
