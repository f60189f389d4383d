#pragma once

#include "pwmod/constructions.hpp"

namespace pwmod {

/// Result of the graded balanced-mass construction used by the pipeline
/// tower. The density A spreads unit masses across runs of components so
/// that every component carries at most `mass_cap` of mass; this is what a
/// later C^1 primitive with small sup-norm can absorb.
struct StaircaseResult {
    SetFn<Rat> A;
    PiecewiseFn<Rat> B;  // B(x) = int_{K cap [x,1]} A
    Rat integral;        // int_K A, exactly 0
    Rat l2_err_sq;       // ||chi + B||_2^2, exact
    Rat mass_cap;        // bound on |int_C A| per component C (exact check)
    Rat max_comp_mass;   // attained maximum
    int blocks = 0;
    int comps_per_transition = 0;
    int moments_zeroed = 0;
};

struct StaircaseOptions {
    /// Number of centered (B + chi)-moments zeroed exactly per cell (0..4).
    int moments = 2;
    /// Components per correction cell; short cells localize the correction.
    size_t cell_comps = 16;
};

/// Balanced density on K whose antiderivative B approximates -chi_K in L^2
/// as well as the stage permits, while keeping per-component masses at most
/// eps. int_K A = 0 holds exactly per block. Throws InfeasibleError when K
/// has fewer components than two transitions require.
StaircaseResult staircase_mass(const IntervalUnion& K, const Rat& eps,
                               const StaircaseOptions& opts = {});

}  // namespace pwmod
