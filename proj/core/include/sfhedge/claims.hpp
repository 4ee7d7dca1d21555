#ifndef SFHEDGE_CLAIMS_HPP
#define SFHEDGE_CLAIMS_HPP

#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "sfhedge/scenario.hpp"

namespace sfhedge {

/// Nonnegative terminal payoff per scenario, already discounted to time 0.
/// Benefits paid before maturity must be handed in as their maturity-value
/// discounted equivalents.
struct Claim {
    std::vector<double> values;
    std::string description;

    RandomVariable as_rv() const { return RandomVariable{values}; }
};

/// Discounted (S_T - strike)^+ paid only if the terminal signal state is
/// labelled "alive" (always paid when the model has no signal times).
Claim unit_linked_call(const ScenarioSpace& space, double strike);

/// Discounted fixed benefit paid on survival to maturity.
Claim pure_endowment(const ScenarioSpace& space, double benefit);

/// Claim from explicit (market_path_id, signal_path_id, value) entries;
/// unlisted scenarios pay zero. Negative values or out-of-range ids are
/// rejected.
Claim claim_from_table(const ScenarioSpace& space,
                       const std::vector<std::tuple<int, int, double>>& entries);

/// CSV import/export with columns market_path_id,signal_path_id,value.
Claim load_claim_csv(const ScenarioSpace& space, std::istream& in);
Claim load_claim_csv_file(const ScenarioSpace& space, const std::string& path);
void write_claim_csv(const ScenarioSpace& space, const Claim& claim, std::ostream& out);

} // namespace sfhedge

#endif
