#pragma once

#include <map>
#include <string>
#include <vector>

#include "pwmod/constructions.hpp"
#include "pwmod/density.hpp"
#include "pwmod/staircase.hpp"

namespace pwmod {

/// Truncated ell^2-valued Sobolev function: finitely many coordinate
/// functions, implicit zero beyond. The W^{1,2}([0,1],ell^2) norm is the
/// ell^2 sum of coordinate Sobolev norms.
template <class R>
struct VectorFn {
    std::map<int, PiecewiseFn<R>> coords;

    R sobolev_norm_sq() const {
        R acc(0);
        for (const auto& [idx, f] : coords) acc += pwmod::sobolev_norm_sq(f);
        return acc;
    }
};

/// phi * f, coordinatewise.
template <class R>
VectorFn<R> scalar_multiply(const PiecewiseFn<R>& phi, const VectorFn<R>& f) {
    VectorFn<R> out;
    for (const auto& [idx, g] : f.coords) out.coords[idx] = phi * g;
    return out;
}

/// The tower A_n, B_n, S_n, rho_n over a fixed compact K:
///   A_0 = 0, B_0 = 0, S_0 = 1, rho_0 = 1,
///   int_K A_n = 0,                 B_n = int_{K cap [x,1]} A_n,
///   S_n' |_K = A_n exactly,        rho_n = n^2 (S_n - S_{n-1}).
template <class R>
struct PipelineTower {
    IntervalUnion K;
    int N = 0;
    std::vector<SetFn<R>> A;
    std::vector<PiecewiseFn<R>> B;
    std::vector<PiecewiseFn<R>> S;
    std::vector<PiecewiseFn<R>> rho;
    std::vector<int> moments_zeroed;  // staircase correction order per level
};

struct TowerBuildOptions {
    int moments = 2;  // exact (B+chi)-moments zeroed per block in each A_n
};

/// Per-level invariant slacks, recomputed from scratch by the pw-core
/// primitives. Exact booleans in rational mode.
struct TowerLevelReport {
    int n = 0;
    std::string an1;          // int_K A_n, exact string
    bool an1_ok = false;
    double an2_norm = 0;      // ||B_n + chi||_2
    double an2_bound = 0;     // 2^{-n}
    bool an2_ok = false;
    double sn_sup = 0;        // ||S_n - 1||_inf
    bool sn_sup_ok = false;   // < 2^{-n}
    bool sn_deriv_ok = false; // S_n'|_K = A_n exact polynomial identity
    double rho_sup = 0;       // ||rho_n||_inf
    double rho_bound = 0;     // 3 n^2 2^{-n}
    bool rho_ok = false;
    bool all_ok() const { return an1_ok && an2_ok && sn_sup_ok && sn_deriv_ok && rho_ok; }
};

template <class R>
PipelineTower<R> build_tower(const IntervalUnion& K, int N, const TowerBuildOptions& opts = {}) {
    if (N < 1) throw std::invalid_argument("build_tower: N >= 1 required");
    if (K.measure().is_zero()) throw std::invalid_argument("build_tower: K must have positive measure");

    PipelineTower<R> tower;
    tower.K = K;
    tower.N = N;
    tower.A.push_back(SetFn<R>::zero(K));                    // A_0 = 0
    tower.B.push_back(PiecewiseFn<R>());                     // B_0 = 0
    tower.S.push_back(PiecewiseFn<R>::constant(R(1)));       // S_0 = 1
    tower.rho.push_back(PiecewiseFn<R>::constant(R(1)));     // rho_0 = 1 by convention
    tower.moments_zeroed.push_back(0);

    const PiecewiseFn<R> one = PiecewiseFn<R>::constant(R(1));
    for (int n = 1; n <= N; ++n) {
        const Rat eps = Rat::pow2(-n);
        StaircaseOptions sopts;
        sopts.moments = opts.moments;
        StaircaseResult mass = staircase_mass(K, eps, sopts);
        SetFn<R> A = setfn_convert<R>(mass.A);
        PiecewiseFn<R> B = pw_convert<R>(mass.B);
        PrescribeResult<R> pres = prescribe_derivative<R>(K, A, one, eps);
        PiecewiseFn<R> S = pres.g;
        PiecewiseFn<R> rho = (S - tower.S.back()).scaled(R(static_cast<long>(n) * n));
        tower.A.push_back(std::move(A));
        tower.B.push_back(std::move(B));
        tower.S.push_back(std::move(S));
        tower.rho.push_back(std::move(rho));
        tower.moments_zeroed.push_back(mass.moments_zeroed);
    }
    return tower;
}

template <class R>
TowerLevelReport verify_tower_level(const PipelineTower<R>& tower, int n) {
    if (n < 1 || n > tower.N) throw std::out_of_range("verify_tower_level: bad level");
    TowerLevelReport rep;
    rep.n = n;
    const Rat eps = Rat::pow2(-n);
    const R an1 = integrate_over(tower.A[n], tower.K);
    rep.an1_ok = scalar_traits<R>::is_zero(an1);
    if constexpr (scalar_traits<R>::exact) {
        rep.an1 = an1.str();
    } else {
        rep.an1 = std::to_string(scalar_traits<R>::to_double(an1));
    }

    const R err_sq = l2_norm_sq_plus_indicator(tower.B[n], Indicator{tower.K});
    rep.an2_norm = std::sqrt(std::max(0.0, scalar_traits<R>::to_double(err_sq)));
    rep.an2_bound = eps.to_double();
    if constexpr (scalar_traits<R>::exact) {
        rep.an2_ok = err_sq < eps * eps;
    } else {
        rep.an2_ok = rep.an2_norm < rep.an2_bound;
    }

    PiecewiseFn<R> s_dev = tower.S[n].shifted(R(-1));
    rep.sn_sup = sup_norm(s_dev);
    if constexpr (scalar_traits<R>::exact) {
        rep.sn_sup_ok = sup_norm_below(s_dev, eps);
    } else {
        rep.sn_sup_ok = rep.sn_sup < eps.to_double();
    }
    rep.sn_deriv_ok = derivative_matches_on(tower.S[n], tower.A[n], tower.K);

    const Rat rho_bound = Rat(3 * static_cast<long>(n) * n) * eps;
    rep.rho_sup = sup_norm(tower.rho[n]);
    rep.rho_bound = rho_bound.to_double();
    if constexpr (scalar_traits<R>::exact) {
        rep.rho_ok = sup_norm_below(tower.rho[n], rho_bound) || !(rep.rho_sup > rep.rho_bound);
    } else {
        rep.rho_ok = rep.rho_sup <= rep.rho_bound;
    }
    return rep;
}

template <class R>
std::vector<TowerLevelReport> verify_tower(const PipelineTower<R>& tower) {
    std::vector<TowerLevelReport> reports;
    for (int n = 1; n <= tower.N; ++n) reports.push_back(verify_tower_level(tower, n));
    return reports;
}

/// f^[0] = e_0 + sum n^{-2} e_n (constant in x), f^[n] = e_n - rho_n e_0.
template <class R>
VectorFn<R> generator(const PipelineTower<R>& tower, int n) {
    if (n < 0 || n > tower.N) throw std::out_of_range("generator: index out of range");
    VectorFn<R> f;
    if (n == 0) {
        f.coords[0] = PiecewiseFn<R>::constant(R(1));
        for (int k = 1; k <= tower.N; ++k)
            f.coords[k] = PiecewiseFn<R>::constant(R(1) / R(static_cast<long>(k) * k));
    } else {
        f.coords[n] = PiecewiseFn<R>::constant(R(1));
        f.coords[0] = -tower.rho[n];
    }
    return f;
}

/// g_n(phi) = int_K (rho_n phi)' dx, computed through
/// int_K rho_n phi' + int_K rho_n' phi with rho_n'|_K = n^2 (A_n - A_{n-1})
/// used exactly. rho_0 = 1, so g_0(phi) = int_K phi'.
template <class R>
R apply_g_n(const PipelineTower<R>& tower, int n, const PiecewiseFn<R>& phi) {
    if (n < 0 || n > tower.N) throw std::out_of_range("apply_g_n: index out of range");
    if (phi.continuity() == Continuity::broken)
        throw std::invalid_argument("apply_g_n: phi must be absolutely continuous");
    PiecewiseFn<R> dphi = phi.derivative();
    if (n == 0) return integrate_over(dphi, tower.K);
    R term1 = integrate_over(tower.rho[n] * dphi, tower.K);
    R term2 = integrate_product_over(tower.A[n], phi, tower.K) -
              integrate_product_over(tower.A[n - 1], phi, tower.K);
    return term1 + term2 * R(static_cast<long>(n) * n);
}

/// g(h) = sum_{n <= order} g_n(h_n).
template <class R>
R apply_g(const PipelineTower<R>& tower, const VectorFn<R>& h, int order) {
    R acc(0);
    for (const auto& [idx, coord] : h.coords) {
        if (idx > order) continue;
        if (idx > tower.N) throw std::out_of_range("apply_g: coordinate beyond tower order");
        acc += apply_g_n(tower, idx, coord);
    }
    return acc;
}

template <class R>
R apply_g(const PipelineTower<R>& tower, const VectorFn<R>& h) {
    return apply_g(tower, h, tower.N);
}

/// Partial assembly of the annihilating functional: only g_0..g_m act.
template <class R>
struct PartialFunctional {
    const PipelineTower<R>* tower;
    int order;
    R operator()(const VectorFn<R>& h) const { return apply_g(*tower, h, order); }
};

/// Norm-bound certificate for ||g_n|| <= 6 n^2 2^{-n}: checks
/// |g_n(phi)|^2 <= (6 n^2 2^{-n})^2 ||phi||_{1,2}^2, exactly in rational
/// mode.
template <class R>
bool gn_bound_holds(const PipelineTower<R>& tower, int n, const PiecewiseFn<R>& phi) {
    R value = apply_g_n(tower, n, phi);
    Rat bound = Rat(6 * static_cast<long>(n) * n) * Rat::pow2(-n);
    R rhs = scalar_cast<R, Rat>(bound * bound) * sobolev_norm_sq(phi);
    if constexpr (scalar_traits<R>::exact) {
        return value * value <= rhs;
    } else {
        return value * value <= rhs + scalar_traits<double>::tol;
    }
}

struct CharacterVerdict {
    Rat t;
    std::string span_sum;    // S_N(t) - 1, exact in rational mode
    double span_sum_d = 0;
    double sigma_min = 0;
    bool formula_dense = false;
    bool oracle_dense = false;
    bool ok = false;
};

/// Character test at the point t: gamma_n = n^{-2}, delta_n = rho_n(t);
/// sum gamma delta = S_N(t) - 1, so |sum| < 2^{-N} and the span criterion
/// and singular-value oracle must both report dense.
template <class R>
CharacterVerdict character_check(const PipelineTower<R>& tower, const Rat& t,
                                 double sigma_threshold = 1e-8) {
    CharacterVerdict v;
    v.t = t;
    PerturbationPair<R> pair;
    for (int n = 1; n <= tower.N; ++n) {
        pair.gamma.push_back(R(1) / R(static_cast<long>(n) * n));
        pair.delta.push_back(tower.rho[n].eval(t));
    }
    R s = span_sum(pair);
    if constexpr (scalar_traits<R>::exact) {
        v.span_sum = s.str();
    } else {
        v.span_sum = std::to_string(scalar_traits<R>::to_double(s));
    }
    v.span_sum_d = scalar_traits<R>::to_double(s);
    v.formula_dense = span_is_dense(pair) == DensityVerdict::dense;
    v.sigma_min = min_singular_oracle(pair_to_double(pair));
    v.oracle_dense = v.sigma_min > sigma_threshold;
    v.ok = v.formula_dense && v.oracle_dense;
    return v;
}

}  // namespace pwmod
