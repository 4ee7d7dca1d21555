#ifndef SFHEDGE_SOLVER_HPP
#define SFHEDGE_SOLVER_HPP

#include <vector>

#include "sfhedge/claims.hpp"
#include "sfhedge/scenario.hpp"

namespace sfhedge {

/// One linear piece of the per-path success utility. Raising the hedge
/// target on `path` from `lower` to `upper` costs r(x) per unit and gains
/// `slope` per unit of budget, where
///   slope = (p(x)/r(x)) * sum over {s : D(x,s) >= upper} of pi(s)/D(x,s).
/// Slopes strictly decrease along the levels of one path, so the utility
/// is concave piecewise-linear.
struct SlopeSegment {
    int path = 0;
    double lower = 0.0;
    double upper = 0.0;
    double slope = 0.0;
    double cost_per_unit = 0.0;  ///< r(x)
};

/// Market-measurable hedge target, one level per market path; never exceeds
/// the per-path payoff maximum.
struct ModifiedClaim {
    std::vector<double> gamma;
};

struct SolverResult {
    ModifiedClaim gamma;
    double k = 0.0;            ///< slope at the water level (0 when everything is funded)
    double budget_used = 0.0;  ///< E_r[gamma]
    double success_ratio = 0.0;
    std::vector<double> ratio_table;  ///< per-scenario success ratio
};

/// Segments for all paths, in path-id order and ascending levels within a
/// path. Scenarios with zero payoff are treated as automatically covered and
/// do not contribute; paths whose payoff is identically zero produce none.
std::vector<SlopeSegment> compute_slopes(const ScenarioSpace& space, const Claim& claim);

/// Largest payoff level per path whose segment slope still meets k (zero if
/// none). Decreasing in k. Rejects k <= 0, where the defining set is
/// unbounded.
ModifiedClaim compute_f(const ScenarioSpace& space, const Claim& claim, double k);

/// Exact maximizer of the expected success ratio over market-measurable
/// targets costing at most `budget`: fills segments in decreasing slope
/// order (ties broken by path id, then level), with at most one partially
/// funded segment. A budget of at least the superhedge cost funds every
/// level exactly.
SolverResult solve_budget(const ScenarioSpace& space, const Claim& claim, double budget);

/// Expected success ratio of an arbitrary market-measurable target:
/// E_p[min(1, gamma/D)], counting D = 0 scenarios as fully covered.
double success_ratio(const ScenarioSpace& space, const Claim& claim, const ModifiedClaim& gamma);

/// Per-scenario success ratios for a target (the phi table).
std::vector<double> success_ratio_table(const ScenarioSpace& space, const Claim& claim,
                                        const ModifiedClaim& gamma);

} // namespace sfhedge

#endif
