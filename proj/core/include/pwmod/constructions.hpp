#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pwmod/set_fn.hpp"

namespace pwmod {

/// Raised when a construction cannot be carried out at the current Cantor
/// stage; `required_depth` is the smallest SVC stage estimated to work
/// (-1 when unknown).
struct InfeasibleError : std::runtime_error {
    InfeasibleError(const std::string& what, int depth_hint)
        : std::runtime_error(what), required_depth(depth_hint) {}
    int required_depth;
};

/// C^1 profile with phi(0)=1, phi'(0)=0, phi(1)=phi'(1)=0, monotone
/// non-increasing on [0,1]: the cubic (1-x)^2 (1+2x). Implicitly zero
/// beyond 1.
PiecewiseFn<Rat> bump_profile();

/// Prescription for a boundary bump: f in C^1[alpha,beta], f(alpha)=f(beta)=0,
/// f'(alpha)=a, f'(beta)=b, sup|f| < eps.
struct BumpSpec {
    Rat alpha, beta;
    Rat a, b;
    Rat eps;
};

/// The scaled-profile construction: a(x-alpha)phi((x-alpha)/delta) near alpha,
/// b(x-beta)phi((beta-x)/delta) near beta, zero between, with
/// delta = min((beta-alpha)/2, eps/max(|a|,|b|,1))/2.
PiecewiseFn<Rat> boundary_bump(const BumpSpec& spec);

/// Continuous extension of a to [0,1]: equal to a on the components, linear
/// across each gap, constant before the first and after the last component.
/// sup|h| = sup|a|.
template <class R>
PiecewiseFn<R> tietze_extend(const IntervalUnion& K, const SetFn<R>& a);

template <class R>
struct PrescribeResult {
    PiecewiseFn<R> g;    // C^1[0,1] with g'|_K = a, ||g - f||_inf < eps
    PiecewiseFn<R> psi;  // the correction g - f
    PiecewiseFn<R> h;    // continuous extension of a - f'|_K actually used
    double h_sup = 0;
    double psi_sup = 0;
    Rat fineness;        // effective covering fineness delta; psi_sup <= delta*(1+h_sup)
};

/// Builds g in C^1[0,1] with g'(x) = a(x) exactly for x in K and
/// ||g - f||_inf < eps. f must be C^1 on [0,1].
template <class R>
PrescribeResult<R> prescribe_derivative(const IntervalUnion& K, const SetFn<R>& a,
                                        const PiecewiseFn<R>& f, const Rat& eps);

/// True iff g' restricted to K equals a as an exact polynomial identity on
/// every component (coefficient-wise up to the scalar tolerance).
template <class R>
bool derivative_matches_on(const PiecewiseFn<R>& g, const SetFn<R>& a, const IntervalUnion& K);

/// One block of the balanced-mass construction; all six points are off K
/// (except that alpha may be 0 and v may be 1 when K touches the boundary).
struct BalancedBlock {
    Rat alpha, beta, a, b, u, v;
};

struct BalancedMassResult {
    SetFn<Rat> A;          // the balanced density on K
    PiecewiseFn<Rat> B;    // B(x) = int_{K cap [x,1]} A
    std::vector<BalancedBlock> blocks;
    // exact certificate values
    Rat integral;          // int_K A (must be 0)
    Rat l2_err_sq;         // ||chi + B||_2^2  (must be <= eps^2)
    Rat mu1_max;           // largest zone measure
    Rat mu1_bound;         // eps^2 / (16 n)
    Rat mu2_value;         // measure( union [alpha_k, v_k] \ K )
    Rat mu2_bound;         // eps^2 / 8
    Rat omega1_measure;    // measure bound for the error set Omega_1
};

/// Balanced mass on K: A with int_K A = 0 exactly and ||chi + B||_2 <= eps,
/// via the block selection with zone bounds (mu1) and small off-K spill
/// (mu2). Throws InfeasibleError when no block selection exists at this
/// stage (reports the SVC depth that would suffice).
BalancedMassResult balanced_mass(const IntervalUnion& K, const Rat& eps);

// --- implementation of the templated constructions -------------------------

template <class R>
PiecewiseFn<R> tietze_extend(const IntervalUnion& K, const SetFn<R>& a) {
    if (!(a.domain == K)) throw std::domain_error("tietze_extend: SetFn not defined on K");
    if (K.is_empty()) return PiecewiseFn<R>();
    const auto& comps = K.components();
    if (comps.front().lo < Rat(0) || comps.back().hi > Rat(1))
        throw std::domain_error("tietze_extend: K escapes [0,1]");

    std::vector<Rat> breaks{Rat(0)};
    std::vector<Poly<R>> pieces;
    auto push = [&](const Rat& up_to, Poly<R> p) {
        if (breaks.back() < up_to) {
            breaks.push_back(up_to);
            pieces.push_back(std::move(p));
        }
    };
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i == 0) {
            push(comps[0].lo, Poly<R>::constant(a.pieces[0].eval(R(0))));
        } else {
            // linear interpolation across the gap (local coordinate)
            R y0 = a.pieces[i - 1].eval(scalar_cast<R, Rat>(comps[i - 1].length()));
            R y1 = a.pieces[i].eval(R(0));
            R len = scalar_cast<R, Rat>(comps[i].lo - comps[i - 1].hi);
            R slope = (y1 - y0) / len;
            push(comps[i].lo, Poly<R>(std::vector<R>{y0, slope}));
        }
        push(comps[i].hi, a.pieces[i]);
    }
    push(Rat(1),
         Poly<R>::constant(a.pieces.back().eval(scalar_cast<R, Rat>(comps.back().length()))));
    return PiecewiseFn<R>(std::move(breaks), std::move(pieces)).simplified();
}

namespace detail {

/// Cubic with prescribed values and slopes at the ends of [x0, x1],
/// returned in the local coordinate u = x - x0.
template <class R>
Poly<R> hermite_cubic(const Rat& x0, const Rat& x1, const R& v0, const R& s0, const R& v1,
                      const R& s1) {
    R L = scalar_cast<R, Rat>(x1 - x0);
    R c2 = ((v1 - v0) * R(3) / L - s0 * R(2) - s1) / L;
    R c3 = ((v0 - v1) * R(2) / L + s0 + s1) / (L * L);
    return Poly<R>(std::vector<R>{v0, s0, c2, c3});
}

}  // namespace detail

template <class R>
PrescribeResult<R> prescribe_derivative(const IntervalUnion& K, const SetFn<R>& a,
                                        const PiecewiseFn<R>& f, const Rat& eps) {
    if (!(eps > Rat(0))) throw std::invalid_argument("prescribe_derivative: eps must be > 0");
    if (f.continuity() != Continuity::c1)
        throw std::invalid_argument("prescribe_derivative: f must be C^1");
    if (!(f.domain_lo() == Rat(0)) || !(f.domain_hi() == Rat(1)))
        throw std::invalid_argument("prescribe_derivative: f must live on [0,1]");
    if (!(a.domain == K)) throw std::domain_error("prescribe_derivative: a not defined on K");

    PrescribeResult<R> out;
    if (K.is_empty()) {
        out.g = f;
        out.psi = PiecewiseFn<R>();
        out.h = PiecewiseFn<R>();
        out.fineness = Rat(0);
        return out;
    }

    PiecewiseFn<R> h = tietze_extend(K, a) - f.derivative();
    const auto& comps = K.components();

    std::vector<Rat> breaks{Rat(0)};
    std::vector<Poly<R>> pieces;
    auto push = [&](const Rat& up_to, Poly<R> p) {
        if (breaks.back() < up_to) {
            breaks.push_back(up_to);
            pieces.push_back(std::move(p));
        }
    };

    Rat max_glue(0);
    // Glue over [x0, x1] from (v0, s0) to (v1, s1); splits wide gaps into
    // edge Hermites around a zero plateau so the correction stays local.
    auto glue = [&](const Rat& x0, const Rat& x1, const R& v0, const R& s0, const R& v1,
                    const R& s1) {
        Rat L = x1 - x0;
        if (!(L > Rat(0))) return;
        Rat slope_scale =
            Rat(1) + Rat::from_double(scalar_traits<R>::to_double(scalar_traits<R>::abs(s0)) +
                                      scalar_traits<R>::to_double(scalar_traits<R>::abs(s1)) + 1e-12);
        Rat w_cap = eps / (Rat(8) * slope_scale);
        if (L <= Rat(4) * w_cap) {
            push(x1, detail::hermite_cubic(x0, x1, v0, s0, v1, s1));
            max_glue = max(max_glue, L);
        } else {
            Rat wl = w_cap, wr = w_cap;
            push(x0 + wl, detail::hermite_cubic(x0, x0 + wl, v0, s0, R(0), R(0)));
            push(x1 - wr, Poly<R>());
            push(x1, detail::hermite_cubic(x1 - wr, x1, R(0), R(0), v1, s1));
            max_glue = max(max_glue, max(wl, wr));
        }
    };

    Rat max_comp_len(0);
    std::vector<R> v(comps.size());      // psi value at each component start
    std::vector<R> endv(comps.size());   // psi value at each component end
    for (size_t i = 0; i < comps.size(); ++i) {
        R mass = h.definite_integral(comps[i].lo, comps[i].hi);
        v[i] = -mass / R(2);
        endv[i] = mass / R(2);
        max_comp_len = max(max_comp_len, comps[i].length());
    }

    for (size_t i = 0; i < comps.size(); ++i) {
        const Rat& l = comps[i].lo;
        const Rat& r = comps[i].hi;
        if (i == 0) {
            if (Rat(0) < l) glue(Rat(0), l, R(0), R(0), v[0], h.eval(l));
        } else {
            glue(comps[i - 1].hi, l, endv[i - 1], h.eval(comps[i - 1].hi), v[i], h.eval(l));
        }
        // psi on the component: v[i] + int_l^x h, piece by piece of h.
        const auto& hb = h.breakpoints();
        R acc = v[i];
        for (size_t j = 0; j < h.pieces().size(); ++j) {
            Rat lo = max(l, hb[j]), hi = min(r, hb[j + 1]);
            if (!(lo < hi)) continue;
            // local u = x - lo; h's piece lives at offset hb[j]
            Poly<R> anti = h.pieces()[j].antiderivative();
            R shift = scalar_cast<R, Rat>(lo - hb[j]);
            Poly<R> piece = poly_rebase(anti, shift) + Poly<R>::constant(acc - anti.eval(shift));
            acc = piece.eval(scalar_cast<R, Rat>(hi - lo));
            push(hi, std::move(piece));
        }
    }
    if (comps.back().hi < Rat(1))
        glue(comps.back().hi, Rat(1), endv.back(), h.eval(comps.back().hi), R(0), R(0));

    PiecewiseFn<R> psi(std::move(breaks), std::move(pieces));
    if (psi.continuity() != Continuity::c1)
        throw std::logic_error("prescribe_derivative: correction failed to be C^1");

    out.psi_sup = sup_norm(psi);
    out.h_sup = sup_norm(h);
    bool within;
    if constexpr (scalar_traits<R>::exact) {
        within = sup_norm_below(psi, eps);
    } else {
        within = out.psi_sup < eps.to_double() - scalar_traits<double>::tol;
    }
    if (!within) {
        double need = (out.h_sup + 1.0) / eps.to_double();
        int depth_hint = 1;
        while (depth_hint < 60 && std::ldexp(1.0, -depth_hint - 1) * need > 0.25) ++depth_hint;
        throw InfeasibleError(
            "prescribe_derivative: components of K are too long for eps at this stage", depth_hint);
    }

    out.g = psi + f;
    out.psi = std::move(psi);
    out.h = std::move(h);
    out.fineness = Rat(3, 2) * max_comp_len + max_glue;
    return out;
}

template <class R>
bool derivative_matches_on(const PiecewiseFn<R>& g, const SetFn<R>& a, const IntervalUnion& K) {
    if (!a.domain.contains_set(K)) return false;
    PiecewiseFn<R> gp = g.derivative();
    const auto& gb = gp.breakpoints();
    for (const auto& iv : K.components()) {
        size_t idx = *a.domain.locate(iv.lo);
        const Rat& base = a.domain.components()[idx].lo;
        const Poly<R>& target = a.pieces[idx];
        size_t j = gp.piece_index(iv.lo);
        for (; j < gp.pieces().size() && gb[j] < iv.hi; ++j) {
            Rat lo = max(iv.lo, gb[j]), hi = min(iv.hi, gb[j + 1]);
            if (!(lo < hi)) continue;
            // compare in a common local coordinate anchored at lo
            Poly<R> diff = poly_rebase(gp.pieces()[j], scalar_cast<R, Rat>(lo - gb[j])) -
                           poly_rebase(target, scalar_cast<R, Rat>(lo - base));
            if constexpr (scalar_traits<R>::exact) {
                if (!diff.is_zero()) return false;
            } else {
                for (const auto& c : diff.coeffs())
                    if (!scalar_traits<R>::is_zero(c)) return false;
            }
        }
    }
    return true;
}

}  // namespace pwmod
