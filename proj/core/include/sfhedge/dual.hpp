#ifndef SFHEDGE_DUAL_HPP
#define SFHEDGE_DUAL_HPP

#include <span>
#include <vector>

#include "sfhedge/scenario.hpp"

namespace sfhedge {

/// Member of the parametric family of martingale measures used to certify
/// the superhedging price. The density against the extended martingale
/// measure is a product of one factor per signal time,
///   A_i = alpha + (1-alpha) * P(M >= K | info at t_i)
///                           / P(M >= K | market prefix at t_i + earlier signals),
/// which tilts signal weight toward scenarios where M reaches the per-path
/// level K. alpha = 1 recovers the base measure; alpha = 0 is the limiting
/// measure, not equivalent, and is rejected by the martingale check.
/// Atoms where the denominator vanishes carry a vanishing numerator as
/// well; the factor is set to 1 there, which keeps the product a
/// probability density.
struct DualMeasure {
    double alpha = 1.0;
    std::vector<double> level;                 ///< per market path K(x)
    std::vector<double> density;               ///< per scenario, d(new)/d(base)
    std::vector<std::vector<double>> factors;  ///< factors[i] = A_{i+1} per scenario
};

/// Builds the measure for a level table K with K(x) attainable on every
/// path (some positive-probability scenario reaches it); throws
/// MembershipError otherwise.
DualMeasure build_dual_measure(const ScenarioSpace& space, const RandomVariable& M,
                               std::span<const double> level, double alpha);

/// Max over all steps and information atoms of the one-step martingale
/// defect of the discounted price under the tilted measure. Requires
/// alpha > 0 (the alpha = 0 limit is not equivalent to the base measure).
double verify_martingale(const ScenarioSpace& space, const DualMeasure& dual);

/// E[M] under the tilted measure.
double dual_expectation(const ScenarioSpace& space, const RandomVariable& M,
                        const DualMeasure& dual);

/// Superhedging price of a nonnegative scenario payoff: the base-measure
/// expectation of its upper envelope. The tilted-measure expectations never
/// exceed it, and approach it as alpha -> 0 with K at the envelope.
double superhedge_price_via_duality(const ScenarioSpace& space, const RandomVariable& M);

} // namespace sfhedge

#endif
