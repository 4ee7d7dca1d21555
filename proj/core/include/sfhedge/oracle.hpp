#ifndef SFHEDGE_ORACLE_HPP
#define SFHEDGE_ORACLE_HPP

#include <cstdint>

#include "sfhedge/claims.hpp"
#include "sfhedge/lattice.hpp"
#include "sfhedge/scenario.hpp"

namespace sfhedge {

struct OracleConfig {
    int grid_points = 33;    ///< per-path resolution of the refinement grid
    int refine_rounds = 1;   ///< coordinate-ascent passes around the incumbent
    std::size_t scenario_cap = 4096;
};

struct McConfig {
    long long n_sims = 100000;
    std::uint64_t seed = 0;
};

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Best expected success ratio found by direct search, independent of the
/// water-filling solver: it sweeps candidate slope thresholds evaluated
/// straight from their definition, tops each threshold target up with one
/// partially funded segment, spreads budget across equal-slope segments,
/// and finishes with a per-path grid refinement. The candidate family
/// provably contains the exact optimum of the concave piecewise-linear
/// program. Every candidate it evaluates respects the budget.
double brute_force_optimal(const ScenarioSpace& space, const Claim& claim,
                           double budget, const OracleConfig& cfg = {});

/// Seeded Monte Carlo estimate of a strategy's expected success ratio under
/// the physical measure. Sampling is batched with per-batch sub-streams
/// derived from (seed, batch), so results are bit-reproducible for a given
/// seed regardless of scheduling.
McResult monte_carlo_eval(const ScenarioSpace& space, const Claim& claim,
                          const Strategy& strategy, const McConfig& cfg);

} // namespace sfhedge

#endif
