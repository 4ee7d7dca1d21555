#include "sfhedge/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sfhedge/claims.hpp"
#include "sfhedge/dual.hpp"
#include "sfhedge/oracle.hpp"
#include "sfhedge/rng.hpp"
#include "sfhedge/superhedge.hpp"
#include "sfhedge/version.hpp"

namespace sfhedge {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Claim make_claim(const ScenarioSpace& space, const ClaimSpec& spec) {
    switch (spec.type) {
        case ClaimSpec::Type::UnitLinkedCall:
            return unit_linked_call(space, spec.strike);
        case ClaimSpec::Type::PureEndowment:
            return pure_endowment(space, spec.benefit);
        case ClaimSpec::Type::Table:
            return load_claim_csv_file(space, spec.table_path);
    }
    throw DomainError("unreachable claim spec type");
}

} // namespace

Report run(const RunConfig& config, const RunOptions& options) {
    const Lattice lattice = Lattice::build(config.market);
    const SignalModel signals = make_signal_model(config.signals);
    const ScenarioSpace space = ScenarioSpace::build(lattice, signals);
    const Claim claim = make_claim(space, config.claim);

    if (config.budget < 0.0) throw DomainError("budget must be nonnegative");

    const SolverResult solved = solve_budget(space, claim, config.budget);
    const Strategy strategy = build_optimal_strategy(space, claim, solved);
    const double achieved = evaluate_strategy(space, claim, strategy);
    (void)achieved;  // equals solved.success_ratio; asserted by the test suite

    Report report;
    report.tool_name = kToolName;
    report.tool_version = kToolVersion;
    report.rng_algorithm = SplitMix64::algorithm_name();
    report.budget = config.budget;
    report.v0_used = strategy.v0;
    report.superhedge_price_of_claim = superhedge_price_via_duality(space, claim.as_rv());
    report.k = solved.k;
    report.success_ratio = solved.success_ratio;
    report.n_market_paths = space.n_market();
    report.n_signal_paths = space.n_signal();
    report.gamma = solved.gamma.gamma;
    report.config_echo = config_to_pairs(config);

    if (!options.no_verify) {
        if (config.oracle) {
            report.oracle_ratio = brute_force_optimal(space, claim, config.budget, *config.oracle);
        }
        if (config.mc) {
            const McResult mc = monte_carlo_eval(space, claim, strategy, *config.mc);
            report.mc_estimate = mc.estimate;
            report.mc_std_error = mc.std_error;
        }
    }

    if (options.write_files) {
        namespace fs = std::filesystem;
        const fs::path out_dir =
            options.out_override.empty() ? fs::path(config.outputs) : fs::path(options.out_override);
        fs::create_directories(out_dir);

        {
            std::ofstream f(out_dir / "report.txt");
            if (!f) throw Error("cannot write report to " + (out_dir / "report.txt").string());
            write_report(report, f);
        }
        {
            std::ofstream f(out_dir / "gamma.csv");
            f << "market_path_id,gamma\n";
            for (std::size_t x = 0; x < report.gamma.size(); ++x) {
                f << x << ',' << format_double(report.gamma[x]) << '\n';
            }
        }
        {
            std::ofstream f(out_dir / "strategy.csv");
            write_strategy_csv(space.lattice(), strategy, f);
        }
        {
            std::ofstream f(out_dir / "claim.csv");
            write_claim_csv(space, claim, f);
        }
    }

    return report;
}

void write_report(const Report& report, std::ostream& out) {
    out << "tool.name = " << report.tool_name << '\n';
    out << "tool.version = " << report.tool_version << '\n';
    out << "timestamp = " << utc_timestamp() << '\n';
    out << "rng.algorithm = " << report.rng_algorithm << '\n';
    for (const auto& [key, value] : report.config_echo) {
        out << "config." << key << " = " << value << '\n';
    }
    out << "paths.market = " << report.n_market_paths << '\n';
    out << "paths.signal = " << report.n_signal_paths << '\n';
    out << "budget = " << format_double(report.budget) << '\n';
    out << "v0_used = " << format_double(report.v0_used) << '\n';
    out << "superhedge_price_of_D = " << format_double(report.superhedge_price_of_claim) << '\n';
    out << "k = " << format_double(report.k) << '\n';
    out << "success_ratio = " << format_double(report.success_ratio) << '\n';
    if (report.oracle_ratio) {
        out << "oracle_ratio = " << format_double(*report.oracle_ratio) << '\n';
    }
    if (report.mc_estimate) {
        out << "mc_estimate = " << format_double(*report.mc_estimate) << '\n';
        out << "mc_se = " << format_double(*report.mc_std_error) << '\n';
    }
}

std::map<std::string, std::string> read_report_config_echo(std::istream& in) {
    std::map<std::string, std::string> pairs;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        if (key.rfind("config.", 0) != 0) continue;
        pairs[key.substr(7)] = trim(line.substr(eq + 1));
    }
    return pairs;
}

} // namespace sfhedge
