#pragma once

#include <stdexcept>
#include <vector>

#include "pwmod/piecewise.hpp"

namespace pwmod {

/// Function defined on an IntervalUnion, one polynomial per component.
/// Plays the role of a continuous function on the compact set K.
/// Component i's polynomial is stored in the local coordinate
/// u = x - component.lo.
template <class R>
struct SetFn {
    IntervalUnion domain;
    std::vector<Poly<R>> pieces;

    SetFn() = default;
    SetFn(IntervalUnion dom, std::vector<Poly<R>> ps) : domain(std::move(dom)), pieces(std::move(ps)) {
        if (pieces.size() != domain.size())
            throw std::invalid_argument("SetFn: one polynomial per component required");
    }
    static SetFn zero(IntervalUnion dom) {
        std::vector<Poly<R>> ps(dom.size());
        return SetFn(std::move(dom), std::move(ps));
    }
    static SetFn constant(IntervalUnion dom, const R& c) {
        std::vector<Poly<R>> ps(dom.size(), Poly<R>::constant(c));
        return SetFn(std::move(dom), std::move(ps));
    }

    bool is_zero() const {
        for (const auto& p : pieces)
            if (!p.is_zero()) return false;
        return true;
    }

    R eval(const Rat& t) const {
        auto idx = domain.locate(t);
        if (!idx) throw std::domain_error("SetFn: point outside domain");
        return pieces[*idx].eval(scalar_cast<R, Rat>(t - domain.components()[*idx].lo));
    }

    /// Integral over the whole domain.
    R integral() const {
        R acc(0);
        for (size_t i = 0; i < pieces.size(); ++i) {
            const auto& iv = domain.components()[i];
            acc += pieces[i].integral(R(0), scalar_cast<R, Rat>(iv.length()));
        }
        return acc;
    }

    friend SetFn operator+(const SetFn& a, const SetFn& b) {
        require_same_domain(a, b);
        std::vector<Poly<R>> ps(a.pieces);
        for (size_t i = 0; i < ps.size(); ++i) ps[i] += b.pieces[i];
        return SetFn(a.domain, std::move(ps));
    }
    friend SetFn operator-(const SetFn& a, const SetFn& b) {
        require_same_domain(a, b);
        std::vector<Poly<R>> ps(a.pieces);
        for (size_t i = 0; i < ps.size(); ++i) ps[i] -= b.pieces[i];
        return SetFn(a.domain, std::move(ps));
    }
    SetFn scaled(const R& s) const {
        std::vector<Poly<R>> ps;
        ps.reserve(pieces.size());
        for (const auto& p : pieces) ps.push_back(p.scaled(s));
        return SetFn(domain, std::move(ps));
    }

    friend bool operator==(const SetFn& a, const SetFn& b) {
        if (!(a.domain == b.domain)) return false;
        for (size_t i = 0; i < a.pieces.size(); ++i)
            if (!(a.pieces[i] == b.pieces[i])) return false;
        return true;
    }

    static void require_same_domain(const SetFn& a, const SetFn& b) {
        if (!(a.domain == b.domain)) throw std::domain_error("SetFn: domain mismatch");
    }
};

template <class S, class R>
SetFn<S> setfn_convert(const SetFn<R>& a) {
    std::vector<Poly<S>> ps;
    ps.reserve(a.pieces.size());
    for (const auto& p : a.pieces) ps.push_back(poly_convert<S>(p));
    return SetFn<S>(a.domain, std::move(ps));
}

/// Integral of a SetFn over S. Errors if S is not contained in the domain.
template <class R>
R integrate_over(const SetFn<R>& a, const IntervalUnion& S) {
    if (!a.domain.contains_set(S))
        throw std::domain_error("integrate_over: SetFn domain does not contain S");
    R acc(0);
    for (const auto& iv : S.components()) {
        size_t idx = *a.domain.locate(iv.lo);
        const Rat& base = a.domain.components()[idx].lo;
        acc += a.pieces[idx].integral(scalar_cast<R, Rat>(iv.lo - base),
                                      scalar_cast<R, Rat>(iv.hi - base));
    }
    return acc;
}

/// int_S a(t) f(t) dt without materialising the product. S must be contained
/// in a's domain and in f's domain; f's interior breakpoints may subdivide
/// the components freely.
template <class R>
R integrate_product_over(const SetFn<R>& a, const PiecewiseFn<R>& f, const IntervalUnion& S) {
    if (!a.domain.contains_set(S))
        throw std::domain_error("integrate_product_over: SetFn domain does not contain S");
    R acc(0);
    const auto& fb = f.breakpoints();
    for (const auto& iv : S.components()) {
        size_t idx = *a.domain.locate(iv.lo);
        const Rat& base = a.domain.components()[idx].lo;
        const Poly<R>& ap = a.pieces[idx];
        for (size_t j = 0; j < f.pieces().size(); ++j) {
            Rat lo = max(iv.lo, fb[j]), hi = min(iv.hi, fb[j + 1]);
            if (!(lo < hi)) continue;
            // bring f's piece into a's local coordinate u = x - base
            Poly<R> fp = poly_rebase(f.pieces()[j], scalar_cast<R, Rat>(base - fb[j])) ;
            acc += (ap * fp).integral(scalar_cast<R, Rat>(lo - base), scalar_cast<R, Rat>(hi - base));
        }
    }
    return acc;
}

/// Restriction of a piecewise function to an interval union. Every component
/// must be covered by a single polynomial piece of f (pieces that continue
/// the same polynomial across a component are fine).
template <class R>
SetFn<R> restrict_to(const PiecewiseFn<R>& f, const IntervalUnion& S) {
    if (S.is_empty()) return SetFn<R>::zero(S);
    if (f.domain_lo() > S.components().front().lo || f.domain_hi() < S.components().back().hi)
        throw std::domain_error("restrict_to: set escapes the function domain");
    const auto& fb = f.breakpoints();
    std::vector<Poly<R>> ps;
    ps.reserve(S.size());
    for (const auto& iv : S.components()) {
        size_t j = f.piece_index(iv.lo);
        Poly<R> local = poly_rebase(f.pieces()[j], scalar_cast<R, Rat>(iv.lo - fb[j]));
        for (size_t k = j + 1; k < f.pieces().size() && fb[k] < iv.hi; ++k) {
            Poly<R> cont = poly_rebase(local, scalar_cast<R, Rat>(fb[k] - iv.lo));
            if (!(cont == f.pieces()[k]))
                throw std::domain_error(
                    "restrict_to: component crosses distinct pieces; not a single polynomial");
        }
        ps.push_back(std::move(local));
    }
    return SetFn<R>(S, std::move(ps));
}

/// B(x) = int_{K cap [x,1]} A(t) dt on [0,1]: continuous, constant on gaps of
/// K, B(1) = 0. A's domain must lie inside [0,1].
template <class R>
PiecewiseFn<R> set_antiderivative(const SetFn<R>& A) {
    const auto& comps = A.domain.components();
    if (!comps.empty() && (comps.front().lo < Rat(0) || comps.back().hi > Rat(1)))
        throw std::domain_error("set_antiderivative: domain escapes [0,1]");

    // Tail integrals: tail[i] = sum_{j >= i} int_{C_j} A.
    std::vector<R> tail(comps.size() + 1, R(0));
    for (size_t i = comps.size(); i-- > 0;) {
        tail[i] = tail[i + 1] +
                  A.pieces[i].integral(R(0), scalar_cast<R, Rat>(comps[i].length()));
    }

    std::vector<Rat> breaks;
    std::vector<Poly<R>> pieces;
    breaks.push_back(Rat(0));
    auto push_piece = [&](const Rat& up_to, Poly<R> p) {
        if (breaks.back() < up_to) {
            breaks.push_back(up_to);
            pieces.push_back(std::move(p));
        }
    };
    for (size_t i = 0; i < comps.size(); ++i) {
        // Gap (or leading segment) before component i: constant tail[i].
        push_piece(comps[i].lo, Poly<R>::constant(tail[i]));
        // On the component (local u = x - lo):
        //   B = tail[i+1] + (P(len) - P(u)),  P the local antiderivative.
        Poly<R> P = A.pieces[i].antiderivative();
        R plen = P.eval(scalar_cast<R, Rat>(comps[i].length()));
        push_piece(comps[i].hi, Poly<R>::constant(tail[i + 1] + plen) - P);
    }
    push_piece(Rat(1), Poly<R>());
    return PiecewiseFn<R>(std::move(breaks), std::move(pieces));
}

/// sup |a| over the components (double precision).
template <class R>
double sup_norm(const SetFn<R>& a) {
    double best = 0;
    for (size_t i = 0; i < a.pieces.size(); ++i) {
        const auto& iv = a.domain.components()[i];
        best = std::max(best, poly_sup_abs(poly_convert<double>(a.pieces[i]), 0.0,
                                           iv.length().to_double()));
    }
    return best;
}

/// Exact rational upper bound for sup |a|: per piece, sum of |coefficients|
/// times length^k. Coarse but sound; used to pick construction parameters
/// that are later verified exactly.
inline Rat sup_norm_upper_bound(const SetFn<Rat>& a) {
    Rat best(0);
    for (size_t i = 0; i < a.pieces.size(); ++i) {
        Rat m = max(Rat(1), a.domain.components()[i].length());
        Rat acc(0), power(1);
        for (const auto& c : a.pieces[i].coeffs()) {
            acc += c.abs() * power;
            power *= m;
        }
        best = max(best, acc);
    }
    return best;
}

inline Rat sup_norm_upper_bound(const PiecewiseFn<Rat>& f) {
    Rat best(0);
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        Rat m = max(Rat(1), f.piece_length(i));
        Rat acc(0), power(1);
        for (const auto& c : f.pieces()[i].coeffs()) {
            acc += c.abs() * power;
            power *= m;
        }
        best = max(best, acc);
    }
    return best;
}

/// Exact check: |a| < bound everywhere on the domain (rational mode).
inline bool sup_norm_below(const SetFn<Rat>& a, const Rat& bound) {
    for (size_t i = 0; i < a.pieces.size(); ++i) {
        if (!poly_abs_below(a.pieces[i], bound, Rat(0), a.domain.components()[i].length()))
            return false;
    }
    return true;
}

}  // namespace pwmod
