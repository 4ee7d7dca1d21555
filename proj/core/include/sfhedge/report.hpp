#ifndef SFHEDGE_REPORT_HPP
#define SFHEDGE_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "sfhedge/config.hpp"
#include "sfhedge/solver.hpp"

namespace sfhedge {

/// Results of one full pipeline run. Written to <outputs>/report.txt as
/// key = value lines together with a config echo; gamma, strategy and claim
/// tables go to CSV files next to it.
struct Report {
    std::string tool_name;
    std::string tool_version;
    std::string rng_algorithm;
    double budget = 0.0;
    double v0_used = 0.0;
    double superhedge_price_of_claim = 0.0;
    double k = 0.0;
    double success_ratio = 0.0;
    std::optional<double> oracle_ratio;
    std::optional<double> mc_estimate;
    std::optional<double> mc_std_error;
    int n_market_paths = 0;
    int n_signal_paths = 0;
    std::vector<double> gamma;  ///< per market path
    std::vector<std::pair<std::string, std::string>> config_echo;
};

struct RunOptions {
    std::string out_override;  ///< replaces config.outputs when non-empty
    bool no_verify = false;    ///< skip oracle and Monte Carlo even if configured
    bool write_files = true;
};

/// Full pipeline: build market + signals + scenarios + claim, solve the
/// budget problem, build and evaluate the hedge, run the configured
/// verification, write report and tables. Throws on invalid configs and
/// propagates domain/capacity errors.
Report run(const RunConfig& config, const RunOptions& options = {});

void write_report(const Report& report, std::ostream& out);

/// Reads the config echo back out of a report file (keys under "config.").
std::map<std::string, std::string> read_report_config_echo(std::istream& in);

/// Fixed-precision decimal formatting used for every number the tool
/// writes; round-trips doubles exactly.
std::string format_double(double v);

} // namespace sfhedge

#endif
