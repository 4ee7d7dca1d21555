#ifndef SFHEDGE_CONFIG_HPP
#define SFHEDGE_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfhedge/lattice.hpp"
#include "sfhedge/oracle.hpp"
#include "sfhedge/signals.hpp"

namespace sfhedge {

/// Signal section of a run config.
struct SignalSpec {
    enum class Type { None, Mortality, Chain };
    Type type = Type::None;
    std::vector<int> times;               ///< optional for mortality (defaults 1..n)
    std::vector<double> death_probs;      ///< mortality
    std::vector<std::string> states;      ///< chain
    std::vector<double> initial;          ///< chain: distribution over states
    std::vector<std::vector<double>> transition;  ///< chain: one matrix, reused per interval
};

/// Claim section of a run config.
struct ClaimSpec {
    enum class Type { UnitLinkedCall, PureEndowment, Table };
    Type type = Type::UnitLinkedCall;
    double strike = 0.0;
    double benefit = 0.0;
    std::string table_path;
};

/// Full problem description: market, signals, claim, budget, optional
/// verification settings and output directory. Parsed from a key = value
/// file with dotted key paths; see the README for the key list.
struct RunConfig {
    LatticeParams market;
    SignalSpec signals;
    ClaimSpec claim;
    double budget = 0.0;
    std::optional<OracleConfig> oracle;
    std::optional<McConfig> mc;
    std::string outputs = "out";
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& origin = "<stream>");
/// Parse from already-split key/value pairs (used for report round-trips).
RunConfig parse_config_pairs(const std::map<std::string, std::string>& pairs);

/// Canonical key/value form of a config, suitable for echoing into reports;
/// parse_config_pairs inverts it.
std::vector<std::pair<std::string, std::string>> config_to_pairs(const RunConfig& config);

/// Dry-run checks: no-arbitrage, parameter ranges, probability row sums,
/// signal-time placement, capacity caps. Returns human-readable diagnostics
/// instead of throwing; an empty list means the config would run.
std::vector<std::string> validate(const RunConfig& config);

/// Materialize the signal section into a model (already validated).
SignalModel make_signal_model(const SignalSpec& spec);

} // namespace sfhedge

#endif
