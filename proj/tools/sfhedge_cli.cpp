// Command-line front end: loads a problem config, runs the
// build -> solve -> hedge -> verify pipeline and writes the report and
// tables, or dry-run validates a config.
//
// Exit codes: 0 success, 2 config error, 3 domain error, 4 capacity error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sfhedge/config.hpp"
#include "sfhedge/report.hpp"
#include "sfhedge/version.hpp"

namespace {

int do_run(const std::string& config_path, const std::string& out_override, bool no_verify) {
    const sfhedge::RunConfig config = sfhedge::parse_config_file(config_path);

    sfhedge::RunOptions options;
    options.out_override = out_override;
    options.no_verify = no_verify;
    const sfhedge::Report report = sfhedge::run(config, options);

    std::cout << "success_ratio = " << sfhedge::format_double(report.success_ratio) << '\n'
              << "v0_used = " << sfhedge::format_double(report.v0_used) << '\n'
              << "superhedge_price_of_D = "
              << sfhedge::format_double(report.superhedge_price_of_claim) << '\n'
              << "k = " << sfhedge::format_double(report.k) << '\n';
    if (report.oracle_ratio) {
        std::cout << "oracle_ratio = " << sfhedge::format_double(*report.oracle_ratio) << '\n';
    }
    if (report.mc_estimate) {
        std::cout << "mc_estimate = " << sfhedge::format_double(*report.mc_estimate)
                  << " +/- " << sfhedge::format_double(*report.mc_std_error) << '\n';
    }
    const std::string out_dir = out_override.empty() ? config.outputs : out_override;
    std::cout << "report written to " << out_dir << "/report.txt\n";
    return 0;
}

int do_validate(const std::string& config_path) {
    const sfhedge::RunConfig config = sfhedge::parse_config_file(config_path);
    const std::vector<std::string> diags = sfhedge::validate(config);
    if (diags.empty()) {
        std::cout << "ok: config passes all dry-run checks\n";
    } else {
        for (const std::string& d : diags) std::cout << "diagnostic: " << d << '\n';
        std::cout << diags.size() << " diagnostic(s)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(sfhedge::kToolName) +
                 " - capital-constrained hedging of equity-linked payoffs"};
    app.set_version_flag("--version", std::string(sfhedge::kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    bool no_verify = false;

    CLI::App* cmd_run = app.add_subcommand("run", "solve a problem config and write reports");
    cmd_run->add_option("config", config_path, "path to the config file")->required();
    cmd_run->add_option("--out", out_override, "override the output directory");
    cmd_run->add_flag("--no-verify", no_verify, "skip oracle and Monte Carlo verification");

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "dry-run checks on a config, no solving");
    cmd_validate->add_option("config", config_path, "path to the config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return do_run(config_path, out_override, no_verify);
        return do_validate(config_path);
    } catch (const sfhedge::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sfhedge::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 4;
    } catch (const sfhedge::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
