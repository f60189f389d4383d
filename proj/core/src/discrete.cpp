#include "pwmod/discrete.hpp"

#include <algorithm>
#include <cmath>

#include "pwmod/constructions.hpp"

namespace pwmod {

namespace {

// Row echelon over Q(i); returns pivot columns. m is modified in place.
std::vector<size_t> echelon(CMat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        CRat inv = CRat(Rat(1)) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            CRat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

size_t crat_rank(CMat m) { return echelon(m).size(); }

std::vector<CVec> crat_nullspace(const CMat& m_in) {
    if (m_in.empty()) return {};
    CMat m = m_in;
    const size_t cols = m[0].size();
    std::vector<size_t> pivots = echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<CVec> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        CVec v(cols, CRat());
        v[free_col] = CRat(Rat(1));
        for (size_t pi = 0; pi < pivots.size(); ++pi) {
            // pivot row pi has leading 1 at pivots[pi]
            v[pivots[pi]] = -m[pi][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<DiscreteCharacter> vanishing_characters(const FiniteAlgebraModule& m) {
    std::vector<DiscreteCharacter> out;
    for (int omega = 0; omega < m.k; ++omega) {
        CMat rows;
        for (const auto& gen : m.generators) rows.push_back(gen[omega]);
        if (rows.empty()) rows.push_back(CVec(m.n, CRat()));
        for (auto& c : crat_nullspace(rows)) out.push_back({omega, std::move(c)});
    }
    return out;
}

bool check_fge1(const FiniteAlgebraModule& m) { return vanishing_characters(m).empty(); }

size_t module_dimension_bruteforce(const FiniteAlgebraModule& m) {
    // Linear generating family of M inside C^{k n}: e_omega * g_i for every
    // point omega and generator i (multiplication by the point indicator
    // keeps only row omega).
    CMat big;
    for (const auto& gen : m.generators) {
        for (int omega = 0; omega < m.k; ++omega) {
            CVec v(static_cast<size_t>(m.k) * m.n, CRat());
            for (int j = 0; j < m.n; ++j) v[static_cast<size_t>(omega) * m.n + j] = gen[omega][j];
            big.push_back(std::move(v));
        }
    }
    if (big.empty()) return 0;
    return crat_rank(std::move(big));
}

// --- partition of unity -----------------------------------------------------

CoverPartition partition_of_unity(const std::vector<Interval>& cover) {
    // Greedy chain subcover of [0,1]: repeatedly take the interval reaching
    // farthest right among those whose interior contains the current reach
    // (0 to start). Intervals are open, so covering 0 needs lo < 0 < hi.
    std::vector<size_t> chain;
    Rat reach(0);
    while (true) {
        size_t best = cover.size();
        for (size_t i = 0; i < cover.size(); ++i) {
            if (cover[i].lo < reach && cover[i].hi > reach &&
                (best == cover.size() || cover[best].hi < cover[i].hi))
                best = i;
        }
        if (best == cover.size() || (!chain.empty() && best == chain.back()))
            throw std::invalid_argument("partition_of_unity: intervals do not cover [0,1]");
        chain.push_back(best);
        reach = cover[best].hi;
        if (reach > Rat(1)) break;
    }

    // Telescoping ramps: s_j climbs 0 -> 1 inside the overlap of chain[j]
    // and chain[j+1]; rho_1 = 1 - s_1, rho_j = s_{j-1} - s_j, rho_p = s_{p-1}.
    const size_t p = chain.size();
    std::vector<PiecewiseFn<Rat>> ramps;  // p - 1 ramps
    Rat prev_end(0);
    for (size_t j = 0; j + 1 < p; ++j) {
        Rat a = max(max(cover[chain[j + 1]].lo, prev_end), Rat(0));
        Rat b = min(cover[chain[j]].hi, Rat(1));
        if (!(a < b)) throw std::logic_error("partition_of_unity: empty ramp overlap");
        Rat slope = Rat(1) / (b - a);
        std::vector<Rat> bs;
        std::vector<Poly<Rat>> ps;
        if (Rat(0) < a) {
            bs.push_back(Rat(0));
            ps.push_back(Poly<Rat>());
        }
        bs.push_back(a);
        ps.push_back(Poly<Rat>(std::vector<Rat>{Rat(0), slope}));  // local at a
        bs.push_back(b);
        if (b < Rat(1)) {
            ps.push_back(Poly<Rat>::constant(Rat(1)));
            bs.push_back(Rat(1));
        }
        ramps.emplace_back(std::move(bs), std::move(ps));
        prev_end = b;
    }

    CoverPartition out;
    out.cover = cover;
    out.chain = chain;
    out.rhos.assign(cover.size(), PiecewiseFn<Rat>());
    if (p == 1) {
        out.rhos[chain[0]] = PiecewiseFn<Rat>::constant(Rat(1));
        return out;
    }
    out.rhos[chain[0]] = PiecewiseFn<Rat>::constant(Rat(1)) - ramps[0];
    for (size_t j = 1; j + 1 < p; ++j) out.rhos[chain[j]] = ramps[j - 1] - ramps[j];
    out.rhos[chain[p - 1]] = ramps[p - 2];
    return out;
}

// --- module approximation ---------------------------------------------------

namespace {

// Least squares over the rationals: minimizes |y - G c|^2 where G is d x g.
// Returns (c, residual = y - G c). Rank-deficient systems put free
// coefficients at zero.
std::pair<std::vector<Rat>, std::vector<Rat>> least_squares(const std::vector<std::vector<Rat>>& G,
                                                            const std::vector<Rat>& y) {
    const size_t d = G.size();
    const size_t g = d == 0 ? 0 : G[0].size();
    // Normal equations N c = b over Q, N = G^T G, b = G^T y.
    std::vector<std::vector<Rat>> N(g, std::vector<Rat>(g, Rat(0)));
    std::vector<Rat> b(g, Rat(0));
    for (size_t i = 0; i < g; ++i) {
        for (size_t j = 0; j < g; ++j)
            for (size_t r = 0; r < d; ++r) N[i][j] += G[r][i] * G[r][j];
        for (size_t r = 0; r < d; ++r) b[i] += G[r][i] * y[r];
    }
    // Gaussian elimination with free variables pinned to zero.
    std::vector<Rat> c(g, Rat(0));
    std::vector<size_t> pivots;
    std::vector<std::vector<Rat>> M = N;
    std::vector<Rat> rhs = b;
    size_t row = 0;
    for (size_t col = 0; col < g && row < g; ++col) {
        size_t p = row;
        while (p < g && M[p][col].is_zero()) ++p;
        if (p == g) continue;
        std::swap(M[p], M[row]);
        std::swap(rhs[p], rhs[row]);
        for (size_t i = 0; i < g; ++i) {
            if (i == row || M[i][col].is_zero()) continue;
            Rat f = M[i][col] / M[row][col];
            for (size_t j = col; j < g; ++j) M[i][j] -= f * M[row][j];
            rhs[i] -= f * rhs[row];
        }
        pivots.push_back(col);
        ++row;
    }
    for (size_t i = 0; i < pivots.size(); ++i) c[pivots[i]] = rhs[i] / M[i][pivots[i]];
    std::vector<Rat> residual(d, Rat(0));
    for (size_t r = 0; r < d; ++r) {
        Rat acc = y[r];
        for (size_t j = 0; j < g; ++j) acc -= G[r][j] * c[j];
        residual[r] = acc;
    }
    return {std::move(c), std::move(residual)};
}

}  // namespace

ApproximateResult module_approximate(const std::vector<VecFn>& generators, const VecFn& f,
                                     const Rat& eps, const ApproximateOptions& opts) {
    if (!(eps > Rat(0))) throw std::invalid_argument("module_approximate: eps must be > 0");
    if (generators.empty()) throw std::invalid_argument("module_approximate: no generators");
    const size_t d = f.size();
    for (const auto& gen : generators)
        if (gen.size() != d) throw std::invalid_argument("module_approximate: dimension mismatch");

    const Rat eps_sq = eps * eps;
    const Rat half_eps_sq = (eps / Rat(2)) * (eps / Rat(2));

    int grid = opts.grid;
    for (int attempt = 0; attempt <= opts.max_refinements; ++attempt, grid = grid * 2 - 1) {
        // Sample points t_i = i/(grid-1).
        std::vector<Rat> ts;
        for (int i = 0; i < grid; ++i) ts.push_back(Rat(i, static_cast<long>(grid) - 1));

        // Local best approximations by constant coefficients.
        std::vector<std::vector<Rat>> coeff(ts.size());
        for (size_t i = 0; i < ts.size(); ++i) {
            std::vector<std::vector<Rat>> G(d, std::vector<Rat>(generators.size()));
            std::vector<Rat> y(d);
            for (size_t r = 0; r < d; ++r) {
                y[r] = f[r].eval(ts[i]);
                for (size_t j = 0; j < generators.size(); ++j) G[r][j] = generators[j][r].eval(ts[i]);
            }
            auto [c, residual] = least_squares(G, y);
            Rat res_sq(0);
            for (const auto& rr : residual) res_sq += rr * rr;
            if (!(res_sq < half_eps_sq)) {
                throw DensityWitnessError(ts[i], residual, std::sqrt(res_sq.to_double()));
            }
            coeff[i] = std::move(c);
        }

        // Candidate cover: U_i = (t_{i-1}, t_{i+1}).
        Rat h = Rat(1, static_cast<long>(grid) - 1);
        std::vector<Interval> cover;
        for (size_t i = 0; i < ts.size(); ++i) {
            Rat lo = (i == 0) ? -h : ts[i - 1];
            Rat hi = (i + 1 == ts.size()) ? Rat(1) + h : ts[i + 1];
            cover.push_back({lo, hi});
        }
        CoverPartition part = partition_of_unity(cover);

        // Verify the local bound ||f - g_i||^2 < eps^2 on each chosen piece.
        bool local_ok = true;
        for (size_t ci : part.chain) {
            Rat lo = max(cover[ci].lo, Rat(0)), hi = min(cover[ci].hi, Rat(1));
            PiecewiseFn<Rat> err_sq;  // sum of coordinate squares
            bool start = true;
            for (size_t r = 0; r < d; ++r) {
                PiecewiseFn<Rat> diff = f[r];
                for (size_t j = 0; j < generators.size(); ++j)
                    diff = diff - generators[j][r].scaled(coeff[ci][j]);
                PiecewiseFn<Rat> sq = diff * diff;
                err_sq = start ? sq : err_sq + sq;
                start = false;
            }
            // exact: eps^2 - err_sq > 0 on [lo, hi] (piece-local coordinates)
            const auto& eb = err_sq.breakpoints();
            for (size_t pi = 0; pi < err_sq.pieces().size() && local_ok; ++pi) {
                Rat plo = max(lo, eb[pi]), phi = min(hi, eb[pi + 1]);
                if (!(plo < phi)) continue;
                Poly<Rat> gap = Poly<Rat>::constant(eps_sq) - err_sq.pieces()[pi];
                if (!poly_positive_on(gap, plo - eb[pi], phi - eb[pi])) local_ok = false;
            }
            if (!local_ok) break;
        }
        if (!local_ok) {
            if (attempt == opts.max_refinements)
                throw InfeasibleError(
                    "module_approximate: local bound fails between samples; refine grid", -1);
            continue;
        }

        // Assemble g = sum_i rho_i * (sum_j c_ij gen_j).
        ApproximateResult out;
        out.cover_sets = part.chain.size();
        out.module_coeffs.assign(generators.size(), PiecewiseFn<Rat>());
        for (size_t ci : part.chain) {
            for (size_t j = 0; j < generators.size(); ++j) {
                PiecewiseFn<Rat> term = part.rhos[ci].scaled(coeff[ci][j]);
                out.module_coeffs[j] = out.module_coeffs[j] + term;
            }
        }
        out.g.assign(d, PiecewiseFn<Rat>());
        for (size_t r = 0; r < d; ++r) {
            for (size_t j = 0; j < generators.size(); ++j)
                out.g[r] = out.g[r] + out.module_coeffs[j] * generators[j][r];
        }

        // Final exact check ||f - g||_inf < eps.
        PiecewiseFn<Rat> total_sq;
        bool start = true;
        for (size_t r = 0; r < d; ++r) {
            PiecewiseFn<Rat> diff = f[r] - out.g[r];
            total_sq = start ? diff * diff : total_sq + diff * diff;
            start = false;
        }
        bool final_ok = true;
        double worst = 0;
        for (size_t pi = 0; pi < total_sq.pieces().size(); ++pi) {
            Rat len = total_sq.piece_length(pi);
            Poly<Rat> gap = Poly<Rat>::constant(eps_sq) - total_sq.pieces()[pi];
            if (!poly_positive_on(gap, Rat(0), len)) final_ok = false;
            worst = std::max(worst, poly_sup_abs(poly_convert<double>(total_sq.pieces()[pi]), 0.0,
                                                 len.to_double()));
        }
        out.distance = std::sqrt(worst);
        if (!final_ok) {
            if (attempt == opts.max_refinements)
                throw InfeasibleError("module_approximate: assembled distance check failed", -1);
            continue;
        }
        return out;
    }
    throw std::logic_error("module_approximate: unreachable");
}

}  // namespace pwmod
