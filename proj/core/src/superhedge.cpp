#include "sfhedge/superhedge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "sfhedge/numerics.hpp"
#include "sfhedge/report.hpp"

namespace sfhedge {

UpperEnvelope upper_envelope(const ScenarioSpace& space, const RandomVariable& M) {
    if (M.values.size() != space.size()) {
        throw DomainError("scenario table size mismatch");
    }
    UpperEnvelope env;
    env.values.assign(static_cast<std::size_t>(space.n_market()),
                      -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto& e = env.values[static_cast<std::size_t>(space.market_of(i))];
        e = std::max(e, M.values[i]);
    }
    return env;
}

Strategy build_optimal_strategy(const ScenarioSpace& space, const Claim& claim,
                                const SolverResult& result) {
    const UpperEnvelope env = upper_envelope(space, claim.as_rv());
    std::vector<double> target(static_cast<std::size_t>(space.n_market()));
    for (std::size_t x = 0; x < target.size(); ++x) {
        target[x] = std::min(env.values[x], result.gamma.gamma[x]);
    }
    return replicate(space.lattice(), target);
}

double evaluate_strategy(const ScenarioSpace& space, const Claim& claim,
                         const Strategy& strategy) {
    if (claim.values.size() != space.size()) {
        throw DomainError("claim table size mismatch");
    }
    if (strategy.steps() != space.lattice().steps() ||
        strategy.terminal_values().size() != static_cast<std::size_t>(space.n_market())) {
        throw DomainError("strategy shape does not match the lattice");
    }
    for (const auto& level : strategy.values) {
        for (double v : level) {
            if (v < 0.0) {
                throw DomainError("strategy wealth goes negative (not admissible)");
            }
        }
    }

    const std::vector<double>& terminal = strategy.terminal_values();
    KahanSum sum;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double v = terminal[static_cast<std::size_t>(space.market_of(i))];
        const double d = claim.values[i];
        const double phi = (v >= d) ? 1.0 : v / d;  // v < d implies d > 0
        sum.add(space.p(i) * phi);
    }
    return sum.value();
}

void write_strategy_csv(const Lattice& lattice, const Strategy& strategy, std::ostream& out) {
    if (strategy.steps() != lattice.steps()) {
        throw DomainError("strategy shape does not match the lattice");
    }
    out << "step,node_prefix,position,value\n";
    const int n = strategy.steps();
    for (int t = 0; t <= n; ++t) {
        const auto& values = strategy.values[static_cast<std::size_t>(t)];
        for (std::uint32_t prefix = 0; prefix < values.size(); ++prefix) {
            std::string moves;
            for (int b = 0; b < t; ++b) moves += (prefix & (1u << b)) ? 'u' : 'd';
            out << t << ',' << moves << ',';
            if (t < n) out << format_double(strategy.positions[static_cast<std::size_t>(t)][prefix]);
            out << ',' << format_double(values[prefix]) << '\n';
        }
    }
}

} // namespace sfhedge
