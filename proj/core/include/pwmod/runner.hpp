#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pwmod/serialize.hpp"
#include "pwmod/tower.hpp"

namespace pwmod {

enum class Command { cantor, lemma57, lemma58, lemma59, density, tower, certify, discrete_lab };

struct RunConfig {
    Command command = Command::certify;
    int depth = 12;        // SVC stage
    int order = 8;         // tower truncation N
    Rat eps = Rat(1, 4);
    int grid = 101;
    uint64_t seed = 0;
    bool exact_mode = true;
    int moments = 2;       // staircase moment corrections per block
    std::string out_dir;   // where the CLI writes reports; empty = stdout only
    bool dump_csv = false;
    // boundary-bump parameters (lemma57)
    Rat alpha = Rat(0), beta = Rat(1);
    Rat slope_a = Rat(1), slope_b = Rat(-1);
};

struct RunOutcome {
    int exit_code = 0;  // 0 pass, 1 verified inequality failed, 2 infeasible
    Json report;
    std::vector<std::pair<std::string, std::string>> files;  // filename -> contents
};

/// Executes one pipeline stage. Deterministic: identical config gives a
/// byte-identical rendered report.
RunOutcome run(const RunConfig& cfg);

/// Canonical rendering used for report files (2-space indent, trailing
/// newline). Byte-stable across runs.
std::string render_report(const Json& j);

/// Golden lower bound for the smallest singular value of the generator
/// family over the character grid (depth 12, N = 8, 101 points), computed
/// once by the brute-force Jacobi oracle and frozen here.
inline constexpr double kGoldenSigmaMin = 0.5;

/// sum_{n > N} 6 n^2 2^{-n} = 6 * 2^{-N} (N^2 + 4N + 6), the summable tail
/// the truncation leaves unverified.
Rat functional_tail_bound(int N);

// Reusable suites (shared by the CLI and the acceptance tests).

struct DensitySuite {
    int pairs = 0;
    int agreements = 0;
    int critical_pairs = 0;
    double worst_kernel_residual = 0;
    bool ok = false;
    Json report;
};
DensitySuite density_suite(uint64_t seed, int n_pairs, int n_critical);

struct DiscreteSuite {
    int modules = 0;
    int agreements = 0;
    bool approx_ok = false;
    bool witness_ok = false;
    bool partition_ok = false;
    bool ok = false;
    Json report;
};
DiscreteSuite discrete_suite(uint64_t seed, int n_modules);

/// The four fixed certificate test functions: 1, x, x^2, x^3 - x.
std::vector<PiecewiseFn<Rat>> certificate_test_functions();

}  // namespace pwmod
