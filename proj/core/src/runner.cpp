#include "pwmod/runner.hpp"

#include <cmath>

#include "pwmod/corpus.hpp"
#include "pwmod/discrete.hpp"

namespace pwmod {

std::string render_report(const Json& j) { return j.dump(2) + "\n"; }

Rat functional_tail_bound(int N) {
    return Rat(6) * Rat::pow2(-N) *
           Rat(static_cast<long>(N) * N + 4 * static_cast<long>(N) + 6);
}

std::vector<PiecewiseFn<Rat>> certificate_test_functions() {
    std::vector<PiecewiseFn<Rat>> fns;
    fns.push_back(PiecewiseFn<Rat>::constant(Rat(1)));
    fns.push_back(PiecewiseFn<Rat>::from_poly(Poly<Rat>::x()));
    fns.push_back(PiecewiseFn<Rat>::from_poly(Poly<Rat>(std::vector<Rat>{Rat(0), Rat(0), Rat(1)})));
    fns.push_back(
        PiecewiseFn<Rat>::from_poly(Poly<Rat>(std::vector<Rat>{Rat(0), Rat(-1), Rat(0), Rat(1)})));
    return fns;
}

namespace {

const char* kTestFunctionNames[] = {"1", "x", "x^2", "x^3-x"};

template <class R>
std::string scalar_text(const R& v) {
    if constexpr (scalar_traits<R>::exact) {
        return v.str();
    } else {
        return scalar_str(static_cast<double>(v));
    }
}

Json run_cantor(const RunConfig& cfg) {
    IntervalUnion K = svc_set(cfg.depth);
    Json j;
    j["command"] = "cantor";
    j["depth"] = cfg.depth;
    j["component_count"] = K.size();
    j["measure"] = K.measure().str();
    j["measure_minus_half"] = (K.measure() - Rat(1, 2)).str();
    j["set"] = to_json(K);
    return j;
}

Json run_lemma57(const RunConfig& cfg, int& exit_code) {
    BumpSpec spec{cfg.alpha, cfg.beta, cfg.slope_a, cfg.slope_b, cfg.eps};
    PiecewiseFn<Rat> f = boundary_bump(spec);
    Json j;
    j["command"] = "lemma57";
    j["spec"] = {{"alpha", spec.alpha.str()},
                 {"beta", spec.beta.str()},
                 {"a", spec.a.str()},
                 {"b", spec.b.str()},
                 {"eps", spec.eps.str()}};
    PiecewiseFn<Rat> df = f.derivative();
    Json checks = Json::array();
    auto record = [&](const std::string& name, const std::string& lhs, const std::string& rhs,
                      bool ok) {
        checks.push_back({{"check", name}, {"left", lhs}, {"right", rhs}, {"ok", ok}});
        if (!ok) exit_code = 1;
    };
    record("f(alpha)=0", f.eval(spec.alpha).str(), "0", f.eval(spec.alpha).is_zero());
    record("f(beta)=0", f.eval(spec.beta).str(), "0", f.eval(spec.beta).is_zero());
    record("f'(alpha)=a", df.eval(spec.alpha).str(), spec.a.str(), df.eval(spec.alpha) == spec.a);
    record("f'(beta)=b", df.eval(spec.beta).str(), spec.b.str(), df.eval(spec.beta) == spec.b);
    record("sup|f|<eps", scalar_str(sup_norm(f)), spec.eps.str(), sup_norm_below(f, spec.eps));
    j["checks"] = std::move(checks);
    j["bump"] = to_json(f);
    return j;
}

Json run_lemma58(const RunConfig& cfg, int& exit_code) {
    IntervalUnion K = svc_set(cfg.depth);
    SetFn<Rat> a = SetFn<Rat>::constant(K, Rat(1));
    PiecewiseFn<Rat> f;  // zero
    auto res = prescribe_derivative<Rat>(K, a, f, cfg.eps);
    Json j;
    j["command"] = "lemma58";
    j["depth"] = cfg.depth;
    j["eps"] = cfg.eps.str();
    Json checks = Json::array();
    auto record = [&](const std::string& name, const std::string& lhs, const std::string& rhs,
                      bool ok) {
        checks.push_back({{"check", name}, {"left", lhs}, {"right", rhs}, {"ok", ok}});
        if (!ok) exit_code = 1;
    };
    record("g'|_K = a (exact)", "identity", "identity", derivative_matches_on(res.g, a, K));
    record("sup|g-f|<eps", scalar_str(res.psi_sup), cfg.eps.str(), sup_norm_below(res.psi, cfg.eps));
    double delta_bound = res.fineness.to_double() * (1.0 + res.h_sup);
    record("sup|psi| <= delta(1+sup|h|)", scalar_str(res.psi_sup), scalar_str(delta_bound),
           res.psi_sup <= delta_bound + 1e-12);
    j["h_sup"] = res.h_sup;
    j["fineness"] = res.fineness.str();
    j["checks"] = std::move(checks);
    return j;
}

Json run_lemma59(const RunConfig& cfg, int& exit_code) {
    IntervalUnion K = svc_set(cfg.depth);
    BalancedMassResult res = balanced_mass(K, cfg.eps);
    Json j;
    j["command"] = "lemma59";
    j["depth"] = cfg.depth;
    j["eps"] = cfg.eps.str();
    j["blocks"] = res.blocks.size();
    Json checks = Json::array();
    auto record = [&](const std::string& name, const std::string& lhs, const std::string& rhs,
                      bool ok) {
        checks.push_back({{"check", name}, {"left", lhs}, {"right", rhs}, {"ok", ok}});
        if (!ok) exit_code = 1;
    };
    Rat eps_sq = cfg.eps * cfg.eps;
    record("int_K A = 0", res.integral.str(), "0", res.integral.is_zero());
    record("||chi+B||_2^2 <= eps^2", res.l2_err_sq.str(), eps_sq.str(), res.l2_err_sq <= eps_sq);
    record("(mu1) zones < eps^2/16n", res.mu1_max.str(), res.mu1_bound.str(),
           res.mu1_max < res.mu1_bound);
    record("(mu2) spill < eps^2/8", res.mu2_value.str(), res.mu2_bound.str(),
           res.mu2_value < res.mu2_bound);
    record("omega1 <= eps^2/4", res.omega1_measure.str(), (eps_sq / Rat(4)).str(),
           res.omega1_measure <= eps_sq / Rat(4));
    j["checks"] = std::move(checks);
    Json blocks = Json::array();
    for (const auto& b : res.blocks)
        blocks.push_back({{"alpha", b.alpha.str()},
                          {"beta", b.beta.str()},
                          {"a", b.a.str()},
                          {"b", b.b.str()},
                          {"u", b.u.str()},
                          {"v", b.v.str()}});
    j["block_points"] = std::move(blocks);
    return j;
}

template <class R>
Json tower_invariants_json(const PipelineTower<R>& tower, bool& all_ok) {
    Json arr = Json::array();
    for (const auto& rep : verify_tower(tower)) {
        arr.push_back({{"n", rep.n},
                       {"an1", rep.an1},
                       {"an1_ok", rep.an1_ok},
                       {"an2_norm", rep.an2_norm},
                       {"an2_bound", rep.an2_bound},
                       {"an2_ok", rep.an2_ok},
                       {"sn_sup", rep.sn_sup},
                       {"sn_sup_ok", rep.sn_sup_ok},
                       {"sn_deriv_ok", rep.sn_deriv_ok},
                       {"rho_sup", rep.rho_sup},
                       {"rho_bound", rep.rho_bound},
                       {"rho_ok", rep.rho_ok},
                       {"ok", rep.all_ok()}});
        all_ok = all_ok && rep.all_ok();
    }
    return arr;
}

template <class R>
void dump_tower_csv(const PipelineTower<R>& tower, int grid,
                    std::vector<std::pair<std::string, std::string>>& files) {
    for (int n = 1; n <= tower.N; ++n) {
        files.emplace_back("rho_" + std::to_string(n) + ".csv", to_csv(tower.rho[n], grid));
        files.emplace_back("B_" + std::to_string(n) + ".csv", to_csv(tower.B[n], grid));
        files.emplace_back("S_" + std::to_string(n) + ".csv", to_csv(tower.S[n], grid));
    }
}

template <class R>
Json run_tower_mode(const RunConfig& cfg, int& exit_code,
                    std::vector<std::pair<std::string, std::string>>& files) {
    IntervalUnion K = svc_set(cfg.depth);
    TowerBuildOptions opts;
    opts.moments = cfg.moments;
    PipelineTower<R> tower = build_tower<R>(K, cfg.order, opts);
    bool all_ok = true;
    Json inv = tower_invariants_json(tower, all_ok);
    if (!all_ok) exit_code = 1;
    Json j;
    j["command"] = "tower";
    j["depth"] = cfg.depth;
    j["N"] = cfg.order;
    j["mode"] = cfg.exact_mode ? "exact" : "float";
    j["K_measure"] = K.measure().str();
    j["invariants"] = std::move(inv);
    j["all_ok"] = all_ok;
    if (cfg.dump_csv) dump_tower_csv(tower, cfg.grid, files);
    return j;
}

template <class R>
Json run_certify_mode(const RunConfig& cfg, int& exit_code,
                      std::vector<std::pair<std::string, std::string>>& files) {
    IntervalUnion K = svc_set(cfg.depth);
    TowerBuildOptions opts;
    opts.moments = cfg.moments;
    PipelineTower<R> tower = build_tower<R>(K, cfg.order, opts);

    Json j;
    j["schema"] = "certificate_v1";
    j["config"] = {{"command", "certify"}, {"depth", cfg.depth},   {"order", cfg.order},
                   {"grid", cfg.grid},     {"seed", cfg.seed},     {"moments", cfg.moments},
                   {"mode", cfg.exact_mode ? "exact" : "float"}};
    Json failures = Json::array();

    // (iv) tower invariant slacks
    bool tower_ok = true;
    Json inv = tower_invariants_json(tower, tower_ok);
    if (!tower_ok) failures.push_back("tower invariants violated (see tower.invariants)");
    j["tower"] = {{"N", cfg.order},
                  {"K_depth", cfg.depth},
                  {"K_measure", K.measure().str()},
                  {"K_components", K.size()},
                  {"invariants", std::move(inv)},
                  {"tail_norm_bound", functional_tail_bound(cfg.order).str()}};

    // (i) character verdicts on the grid
    bool chars_ok = true;
    double min_sigma = 1e300, max_abs_span = 0;
    Json char_items = Json::array();
    const Rat span_bound = Rat::pow2(-cfg.order);
    for (int i = 0; i < cfg.grid; ++i) {
        Rat t(i, static_cast<long>(cfg.grid) - 1);
        CharacterVerdict v = character_check(tower, t);
        bool span_small;
        R s_val(0);
        {
            // |S_N(t) - 1| < 2^{-N} via the exact evaluation
            s_val = tower.S[cfg.order].eval(t) - R(1);
            if constexpr (scalar_traits<R>::exact) {
                span_small = s_val.abs() < span_bound;
            } else {
                span_small = std::abs(static_cast<double>(s_val)) < span_bound.to_double();
            }
        }
        bool ok = v.ok && span_small;
        chars_ok = chars_ok && ok;
        min_sigma = std::min(min_sigma, v.sigma_min);
        max_abs_span = std::max(max_abs_span, std::abs(v.span_sum_d));
        char_items.push_back({{"t", v.t.str()},
                              {"span_sum", v.span_sum},
                              {"sigma_min", v.sigma_min},
                              {"dense", v.ok},
                              {"ok", ok}});
    }
    if (!chars_ok) failures.push_back("character non-vanishing failed at some grid point");
    j["characters"] = {{"grid", cfg.grid},
                       {"span_bound", span_bound.str()},
                       {"min_sigma", min_sigma},
                       {"golden_sigma_threshold", kGoldenSigmaMin},
                       {"max_abs_span_sum", max_abs_span},
                       {"all_ok", chars_ok},
                       {"items", std::move(char_items)}};

    // (ii) annihilation residuals
    auto test_fns = certificate_test_functions();
    bool annih_ok = true;
    Json annih_items = Json::array();
    for (size_t fi = 0; fi < test_fns.size(); ++fi) {
        PiecewiseFn<R> phi = pw_convert<R>(test_fns[fi]);
        for (int n = 1; n <= cfg.order; ++n) {
            R r = apply_g(tower, scalar_multiply(phi, generator(tower, n)));
            bool zero = scalar_traits<R>::is_zero(r);
            annih_ok = annih_ok && zero;
            annih_items.push_back(
                {{"phi", kTestFunctionNames[fi]}, {"n", n}, {"residual", scalar_text(r)}, {"ok", zero}});
        }
    }
    Json f0_items = Json::array();
    for (size_t fi = 0; fi < test_fns.size(); ++fi) {
        PiecewiseFn<R> phi = pw_convert<R>(test_fns[fi]);
        VectorFn<R> phif0 = scalar_multiply(phi, generator(tower, 0));
        R dphi_sq = l2_norm_sq(phi.derivative());
        double prev = 1e300;
        for (int m : {4, 6, 8}) {
            if (m > cfg.order) continue;
            R r = apply_g(tower, phif0, m);
            double rd = std::abs(scalar_traits<R>::to_double(r));
            double bound = std::sqrt(scalar_traits<R>::to_double(dphi_sq)) * std::pow(2.0, -m);
            bool within;
            if constexpr (scalar_traits<R>::exact) {
                within = r * r <= dphi_sq * scalar_cast<R, Rat>(Rat::pow2(-2 * m));
            } else {
                within = rd <= bound + scalar_traits<double>::tol;
            }
            bool shrinking = rd <= prev;
            annih_ok = annih_ok && within && shrinking;
            f0_items.push_back({{"phi", kTestFunctionNames[fi]},
                                {"m", m},
                                {"residual", scalar_text(r)},
                                {"abs", rd},
                                {"bound", bound},
                                {"within", within},
                                {"shrinking", shrinking}});
            prev = rd;
        }
    }
    if (!annih_ok) failures.push_back("annihilation residuals exceeded their bounds");
    j["annihilation"] = {{"test_functions", Json::array({"1", "x", "x^2", "x^3-x"})},
                         {"items", std::move(annih_items)},
                         {"f0_residuals", std::move(f0_items)},
                         {"all_ok", annih_ok}};

    // (iii) properness witness g((x -> x) e_0) = measure(K) != 0
    VectorFn<R> witness;
    witness.coords[0] = pw_convert<R>(PiecewiseFn<Rat>::from_poly(Poly<Rat>::x()));
    R g_witness = apply_g(tower, witness);
    bool proper_ok;
    if constexpr (scalar_traits<R>::exact) {
        proper_ok = (g_witness == scalar_cast<R, Rat>(K.measure())) && !g_witness.is_zero();
    } else {
        proper_ok = std::abs(static_cast<double>(g_witness) - K.measure().to_double()) <= 1e-10;
    }
    if (!proper_ok) failures.push_back("properness witness mismatch");
    j["properness"] = {{"witness", "(x -> x) e_0"},
                       {"value", scalar_text(g_witness)},
                       {"expected", K.measure().str()},
                       {"ok", proper_ok}};

    bool valid = tower_ok && chars_ok && annih_ok && proper_ok;
    j["verdict"] = valid ? "VALID" : "INVALID";
    j["failures"] = std::move(failures);
    if (!valid) exit_code = 1;
    if (cfg.dump_csv) dump_tower_csv(tower, cfg.grid, files);
    return j;
}

}  // namespace

DensitySuite density_suite(uint64_t seed, int n_pairs, int n_critical) {
    Rng rng(seed);
    DensitySuite out;
    out.pairs = n_pairs;
    out.critical_pairs = n_critical;

    int agree = 0;
    for (int i = 0; i < n_pairs; ++i) {
        PerturbationPair<double> p;
        for (;;) {
            int len = static_cast<int>(rng.uniform(1, 12));
            p.gamma.clear();
            p.delta.clear();
            for (int k = 0; k < len; ++k) {
                p.gamma.push_back(2.0 * rng.unit() - 1.0);
                p.delta.push_back(2.0 * rng.unit() - 1.0);
            }
            double s = span_sum(p);
            if (std::abs(s + 1.0) > 0.1) break;
        }
        bool formula = span_is_dense(p) == DensityVerdict::dense;
        bool oracle = min_singular_oracle(p) > 1e-8;
        if (formula == oracle) ++agree;
    }
    out.agreements = agree;

    double worst = 0;
    for (int i = 0; i < n_critical; ++i) {
        // gamma arbitrary nonzero, delta adjusted so sum gamma delta = -1 exactly
        int len = static_cast<int>(rng.uniform(1, 10));
        std::vector<Rat> gamma, delta;
        for (int k = 0; k < len; ++k) {
            gamma.push_back(rng.small_rat_nonzero(6, 3));
            delta.push_back(rng.small_rat(6, 3));
        }
        Rat partial(0);
        for (int k = 0; k + 1 < len; ++k) partial += gamma[k] * delta[k];
        delta[len - 1] = (Rat(-1) - partial) / gamma[len - 1];
        PerturbationPair<Rat> p(gamma, delta);
        auto v = kernel_vector(p);
        if (!v) {
            out.ok = false;
            out.report["error"] = "kernel_vector missing on a critical pair";
            return out;
        }
        auto pd = pair_to_double(p);
        std::vector<double> vd;
        for (const auto& c : *v) vd.push_back(c.to_double());
        double norm = 0;
        for (double c : vd) norm += c * c;
        norm = std::sqrt(norm);
        std::vector<double> img = apply_s(pd, vd);
        double res = 0;
        for (double c : img) res += c * c;
        res = std::sqrt(res) / norm;
        worst = std::max(worst, res);
    }
    out.worst_kernel_residual = worst;
    out.ok = (agree == n_pairs) && worst <= 1e-12;

    out.report["command"] = "density";
    out.report["pairs"] = n_pairs;
    out.report["agreements"] = agree;
    out.report["critical_pairs"] = n_critical;
    out.report["worst_kernel_residual"] = worst;
    out.report["ok"] = out.ok;
    return out;
}

DiscreteSuite discrete_suite(uint64_t seed, int n_modules) {
    Rng rng(seed);
    DiscreteSuite out;
    out.modules = n_modules;

    int agree = 0;
    for (int i = 0; i < n_modules; ++i) {
        FiniteAlgebraModule m;
        m.k = static_cast<int>(rng.uniform(1, 4));
        m.n = static_cast<int>(rng.uniform(1, 4));
        int gens = static_cast<int>(rng.uniform(1, m.n + 1));
        for (int g = 0; g < gens; ++g) {
            CMat mat(m.k, CVec(m.n));
            for (int w = 0; w < m.k; ++w)
                for (int c = 0; c < m.n; ++c)
                    mat[w][c] = CRat(rng.small_rat(3, 1), rng.small_rat(3, 1));
            m.generators.push_back(std::move(mat));
        }
        bool by_characters = check_fge1(m);
        bool by_rank = module_dimension_bruteforce(m) ==
                       static_cast<size_t>(m.k) * static_cast<size_t>(m.n);
        if (by_characters == by_rank) ++agree;
    }
    out.agreements = agree;

    // Partition of unity example: two overlapping intervals.
    {
        std::vector<Interval> cover{{Rat(-1, 10), Rat(6, 10)}, {Rat(4, 10), Rat(11, 10)}};
        CoverPartition part = partition_of_unity(cover);
        PiecewiseFn<Rat> sum;
        for (const auto& r : part.rhos) sum = sum + r;
        out.partition_ok = (sum == PiecewiseFn<Rat>::constant(Rat(1)));
    }

    // Constructive approximation example (d = 2):
    // generators (1,0) and (x,1); target (0,1) is reachable within any eps.
    {
        VecFn g1{PiecewiseFn<Rat>::constant(Rat(1)), PiecewiseFn<Rat>::constant(Rat(0))};
        VecFn g2{PiecewiseFn<Rat>::from_poly(Poly<Rat>::x()), PiecewiseFn<Rat>::constant(Rat(1))};
        VecFn target{PiecewiseFn<Rat>::constant(Rat(0)), PiecewiseFn<Rat>::constant(Rat(1))};
        ApproximateOptions aopts;
        aopts.grid = 65;
        auto res = module_approximate({g1, g2}, target, Rat(1, 10), aopts);
        out.approx_ok = res.distance < 0.1;

        // Violation: generators vanish in coordinate 2.
        VecFn bad1{PiecewiseFn<Rat>::constant(Rat(1)), PiecewiseFn<Rat>::constant(Rat(0))};
        try {
            module_approximate({bad1}, target, Rat(1, 10), aopts);
            out.witness_ok = false;
        } catch (const DensityWitnessError& e) {
            out.witness_ok = e.direction.size() == 2 && !e.direction[1].is_zero();
        }
    }

    out.ok = (agree == n_modules) && out.approx_ok && out.witness_ok && out.partition_ok;
    out.report["command"] = "discrete";
    out.report["modules"] = n_modules;
    out.report["agreements"] = agree;
    out.report["partition_ok"] = out.partition_ok;
    out.report["approx_ok"] = out.approx_ok;
    out.report["witness_ok"] = out.witness_ok;
    out.report["ok"] = out.ok;
    return out;
}

RunOutcome run(const RunConfig& cfg) {
    RunOutcome out;
    try {
        switch (cfg.command) {
            case Command::cantor:
                out.report = run_cantor(cfg);
                break;
            case Command::lemma57:
                out.report = run_lemma57(cfg, out.exit_code);
                break;
            case Command::lemma58:
                out.report = run_lemma58(cfg, out.exit_code);
                break;
            case Command::lemma59:
                out.report = run_lemma59(cfg, out.exit_code);
                break;
            case Command::density: {
                DensitySuite s = density_suite(cfg.seed, 200, 20);
                out.report = s.report;
                if (!s.ok) out.exit_code = 1;
                break;
            }
            case Command::discrete_lab: {
                DiscreteSuite s = discrete_suite(cfg.seed, 500);
                out.report = s.report;
                if (!s.ok) out.exit_code = 1;
                break;
            }
            case Command::tower:
                out.report = cfg.exact_mode ? run_tower_mode<Rat>(cfg, out.exit_code, out.files)
                                            : run_tower_mode<double>(cfg, out.exit_code, out.files);
                break;
            case Command::certify:
                out.report = cfg.exact_mode ? run_certify_mode<Rat>(cfg, out.exit_code, out.files)
                                            : run_certify_mode<double>(cfg, out.exit_code, out.files);
                break;
        }
    } catch (const InfeasibleError& e) {
        out.exit_code = 2;
        out.report["error"] = e.what();
        out.report["hint"] = "increase depth";
        out.report["required_depth"] = e.required_depth;
    }
    return out;
}

}  // namespace pwmod
