#include "pwmod/constructions.hpp"

#include <algorithm>
#include <cmath>

namespace pwmod {

PiecewiseFn<Rat> bump_profile() {
    // (1-x)^2 (1+2x) = 1 - 3x^2 + 2x^3
    return PiecewiseFn<Rat>::from_poly(Poly<Rat>(std::vector<Rat>{Rat(1), Rat(0), Rat(-3), Rat(2)}));
}

PiecewiseFn<Rat> boundary_bump(const BumpSpec& spec) {
    if (!(spec.alpha < spec.beta)) throw std::invalid_argument("boundary_bump: alpha < beta required");
    if (!(spec.eps > Rat(0))) throw std::invalid_argument("boundary_bump: eps must be > 0");

    const Rat len = spec.beta - spec.alpha;
    const Rat amax = max(Rat(1), max(spec.a.abs(), spec.b.abs()));
    const Rat delta = min(len / Rat(2), spec.eps / amax) / Rat(2);

    const Poly<Rat> phi(std::vector<Rat>{Rat(1), Rat(0), Rat(-3), Rat(2)});
    const Poly<Rat> u = Poly<Rat>::x();  // local coordinate of each piece

    // a u phi(u/delta) on [alpha, alpha + delta], u = x - alpha
    Poly<Rat> left = u.scaled(spec.a) * phi.compose_affine(Rat(0), Rat(1) / delta);
    // b (u - delta) phi(1 - u/delta) on [beta - delta, beta], u = x - (beta - delta)
    Poly<Rat> right = (u - Poly<Rat>::constant(delta)).scaled(spec.b) *
                      phi.compose_affine(Rat(1), Rat(-1) / delta);

    std::vector<Rat> breaks{spec.alpha, spec.alpha + delta, spec.beta - delta, spec.beta};
    std::vector<Poly<Rat>> pieces{std::move(left), Poly<Rat>(), std::move(right)};
    return PiecewiseFn<Rat>(std::move(breaks), std::move(pieces));
}

namespace {

struct BlockRun {
    size_t first, last;  // component index range, inclusive
};

// Gap quantile point: lo + num/den of the width.
Rat gap_point(const Interval& g, long num, long den) {
    return g.lo + (g.hi - g.lo) * Rat(num, den);
}

int svc_depth_hint(const Rat& eps) {
    // Smallest depth d admitting a cut J with
    //   inner gaps  (2^{-J} - 2^{-d})/2            < eps^2/8   and
    //   single-component zones 2^{-d-1}(1+2^{-d})  < eps^2/(16 * 2^J).
    Rat e2 = eps * eps;
    for (int d = 1; d <= 64; ++d) {
        for (int J = 0; J < d; ++J) {
            if (d - J < 1) continue;
            Rat inner = (Rat::pow2(-J) - Rat::pow2(-d)) / Rat(2);
            Rat comp = Rat::pow2(-d - 1) * (Rat(1) + Rat::pow2(-d));
            if (inner < e2 / Rat(8) && comp < e2 / (Rat(16) * Rat::pow2(J))) return d;
        }
    }
    return -1;
}

}  // namespace

BalancedMassResult balanced_mass(const IntervalUnion& K, const Rat& eps) {
    if (!(eps > Rat(0))) throw std::invalid_argument("balanced_mass: eps must be > 0");

    BalancedMassResult out;
    if (K.measure().is_zero()) {
        out.A = SetFn<Rat>::zero(K);
        out.B = set_antiderivative(out.A);
        out.integral = Rat(0);
        out.l2_err_sq = l2_norm_sq_plus_indicator(out.B, Indicator{K});
        out.mu1_bound = eps * eps / Rat(16);
        out.mu2_bound = eps * eps / Rat(8);
        return out;
    }

    const auto& comps = K.components();
    const auto gaps = K.gaps();
    const Rat e2 = eps * eps;

    // Candidate cuts: treat every distinct gap length as a threshold; gaps at
    // least as long as the threshold separate blocks. Larger thresholds give
    // fewer blocks; the spec asks for the smallest feasible block count.
    std::vector<Rat> thresholds;
    for (const auto& g : gaps) thresholds.push_back(g.length());
    std::sort(thresholds.begin(), thresholds.end(), [](const Rat& a, const Rat& b) { return b < a; });
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    for (const auto& T : thresholds) {
        std::vector<BlockRun> runs;
        size_t start = 0;
        for (size_t i = 0; i < gaps.size(); ++i) {
            if (gaps[i].length() >= T) {
                runs.push_back({start, i});
                start = i + 1;
            }
        }
        runs.push_back({start, comps.size() - 1});

        const long n = static_cast<long>(runs.size());
        const Rat mu1_bound = e2 / (Rat(16) * Rat(n));
        bool ok = true;
        for (const auto& run : runs) {
            if (run.last - run.first + 1 < 2) { ok = false; break; }  // zones must be disjoint
            if (!(comps[run.first].length() > Rat(0)) || !(comps[run.last].length() > Rat(0))) {
                ok = false;
                break;
            }
            if (!(comps[run.first].length() < mu1_bound) || !(comps[run.last].length() < mu1_bound)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        // Tiny off-K margins around each block keep (mu2) in budget.
        const Rat margin_cap = e2 / (Rat(64) * Rat(n));
        std::vector<BalancedBlock> blocks;
        std::vector<Interval> spans;
        for (size_t b = 0; b < runs.size(); ++b) {
            const auto& run = runs[b];
            BalancedBlock blk;
            if (run.first == 0) {
                // May land on 0 itself when K touches the boundary; otherwise
                // stay off K inside the leading gap.
                blk.alpha = comps[0].lo.is_zero()
                                ? Rat(0)
                                : comps[0].lo - min(comps[0].lo / Rat(2), margin_cap);
            } else {
                const Rat room = comps[run.first].lo - comps[run.first - 1].hi;
                blk.alpha = comps[run.first].lo - min(room / Rat(4), margin_cap);
            }
            if (run.last + 1 == comps.size()) {
                const Rat room = Rat(1) - comps.back().hi;
                blk.v = room.is_zero() ? Rat(1) : comps.back().hi + min(room / Rat(2), margin_cap);
            } else {
                const Rat room = comps[run.last + 1].lo - comps[run.last].hi;
                blk.v = comps[run.last].hi + min(room / Rat(4), margin_cap);
            }
            const Interval first_gap = {comps[run.first].hi, comps[run.first + 1].lo};
            const Interval last_gap = {comps[run.last - 1].hi, comps[run.last].lo};
            if (run.last - run.first == 1) {
                // single inner gap carries all four interior points
                blk.beta = gap_point(first_gap, 1, 5);
                blk.a = gap_point(first_gap, 2, 5);
                blk.b = gap_point(first_gap, 3, 5);
                blk.u = gap_point(first_gap, 4, 5);
            } else {
                blk.beta = gap_point(first_gap, 1, 2);
                blk.a = gap_point(first_gap, 2, 3);
                blk.b = gap_point(last_gap, 1, 3);
                blk.u = gap_point(last_gap, 1, 2);
            }
            blocks.push_back(blk);
            spans.push_back({blk.alpha, blk.v});
        }

        // (mu2) exactly: measure of the block spans minus K.
        IntervalUnion span_union{std::vector<Interval>(spans)};
        const Rat mu2_value = span_union.subtract(K).measure();
        const Rat mu2_bound = e2 / Rat(8);
        if (!(mu2_value < mu2_bound)) continue;

        // Density: +1/mu on the first zone, -1/mu on the last zone of each block.
        std::vector<Poly<Rat>> pieces(comps.size());
        Rat mu1_max(0);
        for (const auto& run : runs) {
            const Rat mu_first = comps[run.first].length();
            const Rat mu_last = comps[run.last].length();
            pieces[run.first] = Poly<Rat>::constant(Rat(1) / mu_first);
            pieces[run.last] = Poly<Rat>::constant(Rat(-1) / mu_last);
            mu1_max = max(mu1_max, max(mu_first, mu_last));
        }
        out.A = SetFn<Rat>(K, std::move(pieces));
        out.B = set_antiderivative(out.A);
        out.blocks = std::move(blocks);
        out.integral = out.A.integral();
        out.l2_err_sq = l2_norm_sq_plus_indicator(out.B, Indicator{K});
        out.mu1_max = mu1_max;
        out.mu1_bound = mu1_bound;
        out.mu2_value = mu2_value;
        out.mu2_bound = mu2_bound;
        // Omega_1 = (spans \ K) + both zone families.
        out.omega1_measure = mu2_value + Rat(2) * Rat(n) * mu1_max;

        if (!out.integral.is_zero())
            throw std::logic_error("balanced_mass: nonzero integral (internal error)");
        if (!(out.l2_err_sq <= e2))
            throw std::logic_error("balanced_mass: L2 bound violated (internal error)");
        return out;
    }

    throw InfeasibleError("balanced_mass: no block selection satisfies (mu1)/(mu2) at this stage",
                          svc_depth_hint(eps));
}

}  // namespace pwmod
