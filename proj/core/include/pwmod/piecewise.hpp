#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pwmod/interval_union.hpp"
#include "pwmod/polynomial.hpp"
#include "pwmod/sturm.hpp"

namespace pwmod {

/// Smoothness class of a piecewise polynomial. `broken` marks jump
/// discontinuities (e.g. derivatives of merely continuous functions).
enum class Continuity { broken = -1, c0 = 0, c1 = 1 };

/// q(u + delta) — the polynomial rebased to a shifted local coordinate.
template <class R>
Poly<R> poly_rebase(const Poly<R>& q, const R& delta) {
    if (scalar_traits<R>::is_zero(delta) && delta == R(0)) return q;
    return q.compose_affine(delta, R(1));
}

/// Piecewise polynomial on a rational interval [lo, hi] (default [0,1]).
/// Breakpoints are exact rationals. Piece i is stored in the local
/// coordinate u = x - b_i (powers of the offset from its left breakpoint),
/// which keeps coefficients at the scale of the function even on very
/// short pieces. Continuity is computed from the pieces, never declared.
template <class R>
class PiecewiseFn {
public:
    PiecewiseFn() : PiecewiseFn(Rat(0), Rat(1)) {}
    PiecewiseFn(const Rat& lo, const Rat& hi)
        : breaks_{lo, hi}, pieces_{Poly<R>()}, cont_(Continuity::c1) {
        if (!(lo < hi)) throw std::invalid_argument("PiecewiseFn: empty domain");
    }
    /// pieces[i] is the polynomial in u = x - breaks[i].
    PiecewiseFn(std::vector<Rat> breaks, std::vector<Poly<R>> pieces)
        : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
        if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
            throw std::invalid_argument("PiecewiseFn: breakpoint/piece mismatch");
        for (size_t i = 0; i + 1 < breaks_.size(); ++i)
            if (!(breaks_[i] < breaks_[i + 1]))
                throw std::invalid_argument("PiecewiseFn: breakpoints not increasing");
        cont_ = compute_continuity();
    }

    static PiecewiseFn constant(const R& c, const Rat& lo = Rat(0), const Rat& hi = Rat(1)) {
        return PiecewiseFn({lo, hi}, {Poly<R>::constant(c)});
    }
    /// Wraps a polynomial given in the global coordinate x.
    static PiecewiseFn from_poly(const Poly<R>& p, const Rat& lo = Rat(0), const Rat& hi = Rat(1)) {
        return PiecewiseFn({lo, hi}, {poly_rebase(p, scalar_cast<R, Rat>(lo))});
    }

    const std::vector<Rat>& breakpoints() const { return breaks_; }
    const std::vector<Poly<R>>& pieces() const { return pieces_; }
    Continuity continuity() const { return cont_; }
    const Rat& domain_lo() const { return breaks_.front(); }
    const Rat& domain_hi() const { return breaks_.back(); }
    size_t piece_count() const { return pieces_.size(); }
    Rat piece_length(size_t i) const { return breaks_[i + 1] - breaks_[i]; }
    int max_degree() const {
        int d = -1;
        for (const auto& p : pieces_) d = std::max(d, p.degree());
        return d;
    }

    /// Index of the piece whose closed interval contains t; right-continuous
    /// convention at interior breakpoints.
    size_t piece_index(const Rat& t) const {
        if (t < breaks_.front() || t > breaks_.back())
            throw std::domain_error("PiecewiseFn: eval outside domain");
        size_t idx = std::upper_bound(breaks_.begin(), breaks_.end(), t) - breaks_.begin();
        if (idx == 0) return 0;
        if (idx >= breaks_.size()) return pieces_.size() - 1;
        return idx - 1;
    }

    R eval(const Rat& t) const {
        size_t i = piece_index(t);
        return pieces_[i].eval(scalar_cast<R, Rat>(t - breaks_[i]));
    }
    double eval_d(double t) const {
        double lo = breaks_.front().to_double(), hi = breaks_.back().to_double();
        t = std::min(std::max(t, lo), hi);
        size_t i = 0;
        while (i + 1 < pieces_.size() && breaks_[i + 1].to_double() <= t) ++i;
        return pieces_[i].eval_d(t - breaks_[i].to_double());
    }

    PiecewiseFn derivative() const {
        std::vector<Poly<R>> d;
        d.reserve(pieces_.size());
        for (const auto& p : pieces_) d.push_back(p.derivative());
        return PiecewiseFn(breaks_, std::move(d));
    }

    /// Continuous antiderivative vanishing at domain_lo.
    PiecewiseFn antiderivative() const {
        std::vector<Poly<R>> out;
        out.reserve(pieces_.size());
        R acc(0);
        for (size_t i = 0; i < pieces_.size(); ++i) {
            Poly<R> a = pieces_[i].antiderivative();  // a(0) = 0
            out.push_back(a + Poly<R>::constant(acc));
            acc += a.eval(scalar_cast<R, Rat>(piece_length(i)));
        }
        return PiecewiseFn(breaks_, std::move(out));
    }

    R integral() const {
        R acc(0);
        for (size_t i = 0; i < pieces_.size(); ++i)
            acc += pieces_[i].integral(R(0), scalar_cast<R, Rat>(piece_length(i)));
        return acc;
    }

    R definite_integral(const Rat& a, const Rat& b) const {
        if (a > b) return -definite_integral(b, a);
        if (a < domain_lo() || b > domain_hi())
            throw std::domain_error("PiecewiseFn: integral outside domain");
        R acc(0);
        for (size_t i = 0; i < pieces_.size(); ++i) {
            Rat lo = max(a, breaks_[i]), hi = min(b, breaks_[i + 1]);
            if (lo < hi)
                acc += pieces_[i].integral(scalar_cast<R, Rat>(lo - breaks_[i]),
                                           scalar_cast<R, Rat>(hi - breaks_[i]));
        }
        return acc;
    }

    /// Same function with extra breakpoints inserted.
    PiecewiseFn refined(const std::vector<Rat>& cuts) const {
        std::vector<Rat> nb = breaks_;
        for (const auto& c : cuts)
            if (c > domain_lo() && c < domain_hi()) nb.push_back(c);
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        std::vector<Poly<R>> np;
        np.reserve(nb.size() - 1);
        size_t src = 0;
        for (size_t i = 0; i + 1 < nb.size(); ++i) {
            while (breaks_[src + 1] <= nb[i]) ++src;
            np.push_back(poly_rebase(pieces_[src], scalar_cast<R, Rat>(nb[i] - breaks_[src])));
        }
        return PiecewiseFn(std::move(nb), std::move(np));
    }

    /// Merges adjacent pieces that continue the same polynomial.
    PiecewiseFn simplified() const {
        std::vector<Rat> nb{breaks_.front()};
        std::vector<Poly<R>> np;
        for (size_t i = 0; i < pieces_.size(); ++i) {
            if (!np.empty()) {
                Poly<R> cont = poly_rebase(np.back(), scalar_cast<R, Rat>(breaks_[i] - nb[nb.size() - 2]));
                if (cont == pieces_[i]) {
                    nb.back() = breaks_[i + 1];
                    continue;
                }
            }
            np.push_back(pieces_[i]);
            nb.push_back(breaks_[i + 1]);
        }
        return PiecewiseFn(std::move(nb), std::move(np));
    }

    friend PiecewiseFn operator+(const PiecewiseFn& a, const PiecewiseFn& b) {
        return zip(a, b, [](const Poly<R>& p, const Poly<R>& q) { return p + q; });
    }
    friend PiecewiseFn operator-(const PiecewiseFn& a, const PiecewiseFn& b) {
        return zip(a, b, [](const Poly<R>& p, const Poly<R>& q) { return p - q; });
    }
    friend PiecewiseFn operator*(const PiecewiseFn& a, const PiecewiseFn& b) {
        return zip(a, b, [](const Poly<R>& p, const Poly<R>& q) { return p * q; });
    }
    PiecewiseFn operator-() const {
        std::vector<Poly<R>> np;
        np.reserve(pieces_.size());
        for (const auto& p : pieces_) np.push_back(-p);
        return PiecewiseFn(breaks_, std::move(np));
    }
    PiecewiseFn scaled(const R& s) const {
        std::vector<Poly<R>> np;
        np.reserve(pieces_.size());
        for (const auto& p : pieces_) np.push_back(p.scaled(s));
        return PiecewiseFn(breaks_, std::move(np));
    }
    PiecewiseFn shifted(const R& c) const {
        std::vector<Poly<R>> np;
        np.reserve(pieces_.size());
        for (const auto& p : pieces_) np.push_back(p + Poly<R>::constant(c));
        return PiecewiseFn(breaks_, std::move(np));
    }

    /// Exact equality as functions (piecewise-polynomial identity).
    friend bool operator==(const PiecewiseFn& a, const PiecewiseFn& b) {
        PiecewiseFn sa = a.simplified(), sb = b.simplified();
        if (sa.breaks_.size() != sb.breaks_.size()) return false;
        for (size_t i = 0; i < sa.breaks_.size(); ++i)
            if (!(sa.breaks_[i] == sb.breaks_[i])) return false;
        for (size_t i = 0; i < sa.pieces_.size(); ++i)
            if (!(sa.pieces_[i] == sb.pieces_[i])) return false;
        return true;
    }

private:
    template <class F>
    static PiecewiseFn zip(const PiecewiseFn& a, const PiecewiseFn& b, F&& combine) {
        if (!(a.domain_lo() == b.domain_lo()) || !(a.domain_hi() == b.domain_hi()))
            throw std::domain_error("PiecewiseFn: domain mismatch");
        std::vector<Rat> nb = a.breaks_;
        nb.insert(nb.end(), b.breaks_.begin(), b.breaks_.end());
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        std::vector<Poly<R>> np;
        np.reserve(nb.size() - 1);
        size_t ia = 0, ib = 0;
        for (size_t i = 0; i + 1 < nb.size(); ++i) {
            while (a.breaks_[ia + 1] <= nb[i]) ++ia;
            while (b.breaks_[ib + 1] <= nb[i]) ++ib;
            Poly<R> pa = poly_rebase(a.pieces_[ia], scalar_cast<R, Rat>(nb[i] - a.breaks_[ia]));
            Poly<R> pb = poly_rebase(b.pieces_[ib], scalar_cast<R, Rat>(nb[i] - b.breaks_[ib]));
            np.push_back(combine(pa, pb));
        }
        return PiecewiseFn(std::move(nb), std::move(np));
    }

    Continuity compute_continuity() const {
        bool c0 = true, c1 = true;
        for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
            R len = scalar_cast<R, Rat>(piece_length(i));
            if (!scalar_traits<R>::eq(pieces_[i].eval(len), pieces_[i + 1].eval(R(0)))) {
                c0 = false;
                break;
            }
            if (!scalar_traits<R>::eq(pieces_[i].derivative().eval(len),
                                      pieces_[i + 1].derivative().eval(R(0))))
                c1 = false;
        }
        if (!c0) return Continuity::broken;
        return c1 ? Continuity::c1 : Continuity::c0;
    }

    std::vector<Rat> breaks_;
    std::vector<Poly<R>> pieces_;
    Continuity cont_;
};

template <class S, class R>
PiecewiseFn<S> pw_convert(const PiecewiseFn<R>& f) {
    std::vector<Poly<S>> np;
    np.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) np.push_back(poly_convert<S>(p));
    return PiecewiseFn<S>(f.breakpoints(), std::move(np));
}

// --- integrals and norms ---------------------------------------------------

/// Exact integral of f over the interval union S (S must lie in f's domain).
template <class R>
R integrate_over(const PiecewiseFn<R>& f, const IntervalUnion& S) {
    R acc(0);
    for (const auto& iv : S.components()) acc += f.definite_integral(iv.lo, iv.hi);
    return acc;
}

template <class R>
R l2_inner(const PiecewiseFn<R>& f, const PiecewiseFn<R>& g) {
    return (f * g).integral();
}

template <class R>
R l2_norm_sq(const PiecewiseFn<R>& f) {
    return l2_inner(f, f);
}

template <class R>
double l2_norm(const PiecewiseFn<R>& f) {
    return std::sqrt(scalar_traits<R>::to_double(l2_norm_sq(f)));
}

/// <f,g>_{1,2} = int f g + int f' g'. Arguments must be at least C0
/// (absolutely continuous with piecewise-polynomial derivative).
template <class R>
R sobolev_inner(const PiecewiseFn<R>& f, const PiecewiseFn<R>& g) {
    if (f.continuity() == Continuity::broken || g.continuity() == Continuity::broken)
        throw std::domain_error("sobolev_inner: arguments must be continuous");
    return l2_inner(f, g) + l2_inner(f.derivative(), g.derivative());
}

template <class R>
R sobolev_norm_sq(const PiecewiseFn<R>& f) {
    return sobolev_inner(f, f);
}

template <class R>
double sup_norm(const PiecewiseFn<R>& f) {
    double best = 0;
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        Poly<double> p = poly_convert<double>(f.pieces()[i]);
        best = std::max(best, poly_sup_abs(p, 0.0, f.piece_length(i).to_double()));
    }
    return best;
}

/// Exact check: |f(x)| < bound for all x in the domain (rational mode only).
inline bool sup_norm_below(const PiecewiseFn<Rat>& f, const Rat& bound) {
    for (size_t i = 0; i < f.pieces().size(); ++i)
        if (!poly_abs_below(f.pieces()[i], bound, Rat(0), f.piece_length(i))) return false;
    return true;
}

/// ||f + chi_S||_2^2 over f's domain, exact:
/// int f^2 + 2 int_S f + measure(S).
template <class R>
R l2_norm_sq_plus_indicator(const PiecewiseFn<R>& f, const Indicator& chi) {
    R acc = l2_norm_sq(f);
    acc += R(2) * integrate_over(f, chi.set);
    acc += scalar_cast<R, Rat>(chi.set.measure());
    return acc;
}

/// CSV sample rows (t, f(t)) on a uniform grid over f's domain.
template <class R>
std::vector<std::pair<double, double>> sample_uniform(const PiecewiseFn<R>& f, int points) {
    if (points < 2) throw std::invalid_argument("sample_uniform: need >= 2 points");
    std::vector<std::pair<double, double>> rows;
    rows.reserve(points);
    double lo = f.domain_lo().to_double(), hi = f.domain_hi().to_double();
    for (int i = 0; i < points; ++i) {
        double t = lo + (hi - lo) * i / (points - 1);
        rows.emplace_back(t, f.eval_d(t));
    }
    return rows;
}

}  // namespace pwmod
