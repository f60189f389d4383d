#include "pwmod/staircase.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <cmath>

namespace pwmod {

namespace {

// Quadratic with zero boundary values and prescribed integral over the
// component, in the local coordinate u = x - lo:
// mass * 6 u (len - u) / len^3.
Poly<Rat> comp_bump(const Interval& c, const Rat& mass) {
    const Rat len = c.length();
    const Rat s = mass * Rat(6) / (len * len * len);
    return Poly<Rat>(std::vector<Rat>{Rat(0), len * s, -s});
}

// Solves M x = rhs over the rationals (small dense system, partial pivot).
std::vector<Rat> gauss_solve(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && M[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw std::domain_error("gauss_solve: singular system");
        std::swap(M[pivot], M[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col].is_zero()) continue;
            Rat f = M[row][col] / M[col][col];
            for (size_t j = col; j < n; ++j) M[row][j] -= f * M[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
    return x;
}

// int_a^b f(x) w(x) dx with w given in the global coordinate.
Rat weighted_integral(const PiecewiseFn<Rat>& f, const Poly<Rat>& w, const Rat& a, const Rat& b) {
    Rat acc(0);
    const auto& fb = f.breakpoints();
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        Rat lo = max(a, fb[i]), hi = min(b, fb[i + 1]);
        if (!(lo < hi)) continue;
        Poly<Rat> w_local = w.compose_affine(fb[i], Rat(1));
        acc += (f.pieces()[i] * w_local).integral(lo - fb[i], hi - fb[i]);
    }
    return acc;
}

long rat_ceil(const Rat& x) {
    // smallest integer >= x, for positive x of moderate size
    long lo = 0, hi = 1;
    while (Rat(hi) < x) hi *= 2;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (Rat(mid) < x) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo;
}

Poly<Rat> monomial(int t) {
    std::vector<Rat> c(static_cast<size_t>(t) + 1, Rat(0));
    c[t] = Rat(1);
    return Poly<Rat>(std::move(c));
}

}  // namespace

StaircaseResult staircase_mass(const IntervalUnion& K, const Rat& eps, const StaircaseOptions& opts) {
    if (!(eps > Rat(0))) throw std::invalid_argument("staircase_mass: eps must be > 0");
    StaircaseResult out;
    out.mass_cap = eps;

    if (K.measure().is_zero()) {
        out.A = SetFn<Rat>::zero(K);
        out.B = set_antiderivative(out.A);
        out.integral = Rat(0);
        out.l2_err_sq = l2_norm_sq_plus_indicator(out.B, Indicator{K});
        out.max_comp_mass = Rat(0);
        return out;
    }

    const auto& comps = K.components();
    const auto gaps = K.gaps();
    // Per-component mass 1/q stays at half the cap so the later moment
    // corrections have headroom.
    const long q = 2 * rat_ceil(Rat(1) / eps);
    const size_t m = comps.size();
    if (static_cast<long>(m) < 2 * q) {
        int hint = 1;
        while (hint < 60 && (1L << hint) < 2 * q) ++hint;
        throw InfeasibleError("staircase_mass: fewer components than two transitions need", hint + 1);
    }

    // Candidate cuts: gaps at least as long as the threshold separate blocks.
    std::vector<Rat> thresholds{Rat(2)};  // sentinel: a single block
    for (const auto& g : gaps) thresholds.push_back(g.length());
    std::sort(thresholds.begin(), thresholds.end(), [](const Rat& a, const Rat& b) { return b < a; });
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<size_t> best_bounds;
    Rat best_cost(0);
    bool have_best = false;
    for (const auto& T : thresholds) {
        std::vector<size_t> bounds;  // indices where a new block starts
        bounds.push_back(0);
        bool ok = true;
        size_t start = 0;
        Rat inner(0), trans(0);
        auto close_run = [&](size_t last) {
            size_t size = last - start + 1;
            if (size < 2 * static_cast<size_t>(q)) {
                ok = false;
                return;
            }
            for (long j = 0; j < q; ++j) {
                trans += comps[start + j].length();
                trans += comps[last - j].length();
            }
        };
        for (size_t i = 0; i < gaps.size() && ok; ++i) {
            if (gaps[i].length() >= T) {
                close_run(i);
                bounds.push_back(i + 1);
                start = i + 1;
            } else {
                inner += gaps[i].length();
            }
        }
        if (ok) close_run(m - 1);
        if (!ok) continue;
        Rat cost = inner + Rat(2, 3) * trans;
        if (!have_best || cost < best_cost) {
            best_cost = cost;
            best_bounds = bounds;
            have_best = true;
        }
    }
    if (!have_best) {
        int hint = 1;
        while (hint < 60 && (1L << hint) < 4 * q) ++hint;
        throw InfeasibleError("staircase_mass: no block cut fits two transitions per block",
                              hint + 1);
    }

    // Block index ranges.
    std::vector<std::pair<size_t, size_t>> blocks;
    for (size_t b = 0; b < best_bounds.size(); ++b) {
        size_t first = best_bounds[b];
        size_t last = (b + 1 < best_bounds.size()) ? best_bounds[b + 1] - 1 : m - 1;
        blocks.push_back({first, last});
    }
    out.blocks = static_cast<int>(blocks.size());
    out.comps_per_transition = static_cast<int>(q);

    // Transition masses: +1/q on the first q components (B climbs back to 0
    // scanning left), -1/q on the last q components.
    const Rat unit = Rat(1) / Rat(q);
    std::vector<Rat> masses(m, Rat(0));
    for (const auto& [first, last] : blocks) {
        for (long j = 0; j < q; ++j) {
            masses[first + j] += unit;
            masses[last - j] -= unit;
        }
    }

    auto assemble = [&]() {
        std::vector<Poly<Rat>> pieces(m);
        for (size_t i = 0; i < m; ++i)
            pieces[i] = masses[i].is_zero() ? Poly<Rat>() : comp_bump(comps[i], masses[i]);
        return SetFn<Rat>(K, pieces);
    };

    out.A = assemble();
    out.B = set_antiderivative(out.A);

    // Exact global moment corrections. A single minimum-norm balanced mass
    // redistribution (delta_i on component i) zeroes int_0^1 x^t (B + chi) dx
    // for t = 0..moments-1. Balance (sum delta_i = 0) keeps int_K A = 0 and
    // B(0) = B(1) = 0 exact; the correction dipoles may straddle block
    // boundaries, leaving B a tiny constant on some boundary gaps, which the
    // exact L2 measurement simply reports. The least-squares structure
    // spreads the correction across all components, so every delta_i stays
    // far below the cap. Smooth polynomial integrals against B + chi then
    // vanish exactly through degree moments-1.
    const int mo = std::max(0, std::min(4, opts.moments));
    out.moments_zeroed = 0;
    if (mo > 0) {
        std::vector<Rat> rhs(mo + 1, Rat(0));
        for (int t = 0; t < mo; ++t) {
            Poly<Rat> w = monomial(t);
            Rat d = weighted_integral(out.B, w, Rat(0), Rat(1));
            for (const auto& iv : comps) d += w.integral(iv.lo, iv.hi);
            rhs[t] = -d;
        }
        // rhs[mo] = 0: total added mass must vanish.

        // a[t][i]: global x^t-moment effect of a unit mass bump on component
        // i (B gains 1 left of the component, a smooth ramp inside);
        // a[mo][i] = 1 is the balance row.
        std::vector<std::vector<Rat>> a(mo + 1, std::vector<Rat>(m, Rat(1)));
        for (size_t i = 0; i < m; ++i) {
            const Interval& c = comps[i];
            Poly<Rat> pb = comp_bump(c, Rat(1)).antiderivative();  // local at c.lo
            Poly<Rat> inside = Poly<Rat>::constant(pb.eval(c.length())) - pb;
            for (int t = 0; t < mo; ++t) {
                Poly<Rat> w = monomial(t);
                Poly<Rat> w_local = w.compose_affine(c.lo, Rat(1));
                a[t][i] = w.integral(Rat(0), c.lo) +
                          (inside * w_local).integral(Rat(0), c.length());
            }
        }
        // Minimum-norm solution delta = A^T lambda, (A A^T) lambda = rhs.
        std::vector<std::vector<Rat>> gram(mo + 1, std::vector<Rat>(mo + 1, Rat(0)));
        for (int s = 0; s <= mo; ++s)
            for (int t = 0; t <= mo; ++t)
                for (size_t i = 0; i < m; ++i) gram[s][t] += a[s][i] * a[t][i];
        try {
            std::vector<Rat> lambda = gauss_solve(gram, rhs);
            std::vector<Rat> delta(m, Rat(0));
            for (size_t i = 0; i < m; ++i)
                for (int t = 0; t <= mo; ++t) delta[i] += lambda[t] * a[t][i];
            bool fits = true;
            for (size_t i = 0; i < m && fits; ++i)
                if (!((masses[i] + delta[i]).abs() < eps)) fits = false;
            if (fits) {
                for (size_t i = 0; i < m; ++i) masses[i] += delta[i];
                out.moments_zeroed = mo;
                out.A = assemble();
                out.B = set_antiderivative(out.A);
            } else if (getenv("PWMOD_DEBUG")) {
                fprintf(stderr, "staircase: global correction exceeds mass cap\n");
            }
        } catch (const std::domain_error&) {
            if (getenv("PWMOD_DEBUG")) fprintf(stderr, "staircase: singular gram\n");
        }
    }

    out.integral = out.A.integral();
    out.l2_err_sq = l2_norm_sq_plus_indicator(out.B, Indicator{K});
    out.max_comp_mass = Rat(0);
    for (size_t i = 0; i < m; ++i) out.max_comp_mass = max(out.max_comp_mass, masses[i].abs());
    if (!out.integral.is_zero())
        throw std::logic_error("staircase_mass: nonzero total mass (internal error)");
    return out;
}

}  // namespace pwmod
