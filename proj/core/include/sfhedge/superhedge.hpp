#ifndef SFHEDGE_SUPERHEDGE_HPP
#define SFHEDGE_SUPERHEDGE_HPP

#include <iosfwd>

#include "sfhedge/claims.hpp"
#include "sfhedge/scenario.hpp"
#include "sfhedge/solver.hpp"

namespace sfhedge {

/// Pathwise maximum of a scenario table over the positive-probability
/// signal outcomes: the cheapest market-measurable dominant of the table.
struct UpperEnvelope {
    std::vector<double> values;  ///< per market path
};

UpperEnvelope upper_envelope(const ScenarioSpace& space, const RandomVariable& M);

/// Replicates min(envelope(D), gamma) on the tree. The result starts at
/// cost E_r[min(envelope, gamma)] <= budget and its terminal wealth
/// dominates min(D, gamma) on every scenario.
Strategy build_optimal_strategy(const ScenarioSpace& space, const Claim& claim,
                                const SolverResult& result);

/// Expected success ratio realized by a strategy, by full enumeration:
/// a scenario scores 1 when terminal wealth covers the payoff (including
/// zero payoffs), else the wealth/payoff ratio. Rejects strategies whose
/// wealth goes negative at any node.
double evaluate_strategy(const ScenarioSpace& space, const Claim& claim,
                         const Strategy& strategy);

/// CSV export with columns step,node_prefix,position,value. Node prefixes
/// are move strings ('u'/'d', empty for the root); terminal rows carry no
/// position.
void write_strategy_csv(const Lattice& lattice, const Strategy& strategy, std::ostream& out);

} // namespace sfhedge

#endif
