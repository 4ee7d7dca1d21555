#include "sfhedge/claims.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sfhedge/report.hpp"

namespace sfhedge {

namespace {

// Index of the "alive" label at the terminal signal time, or -1 when the
// model has no signal times (everyone counts as alive).
int alive_state_index(const ScenarioSpace& space) {
    const SignalModel& model = space.signals();
    if (model.n_times() == 0) return -1;
    const auto& labels = model.state_labels.back();
    const auto it = std::find(labels.begin(), labels.end(), "alive");
    if (it == labels.end()) {
        throw DomainError("survival claim requires a terminal signal state labelled \"alive\"");
    }
    return static_cast<int>(it - labels.begin());
}

bool alive_at_maturity(const ScenarioSpace& space, int signal_id, int alive_idx) {
    if (alive_idx < 0) return true;
    const SignalPath& s = space.signal_paths()[static_cast<std::size_t>(signal_id)];
    return s.states.back() == alive_idx;
}

} // namespace

Claim unit_linked_call(const ScenarioSpace& space, double strike) {
    if (strike < 0.0 || !std::isfinite(strike)) {
        throw DomainError("strike must be nonnegative");
    }
    const Lattice& lat = space.lattice();
    const double discount = std::pow(1.0 + lat.params().rho, lat.steps());
    const double discounted_strike = strike / discount;
    const int alive_idx = alive_state_index(space);

    Claim claim;
    claim.description = "unit_linked_call strike=" + format_double(strike);
    claim.values.resize(space.size(), 0.0);
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!alive_at_maturity(space, space.signal_of(i), alive_idx)) continue;
        const double x_T = lat.path(space.market_of(i)).prices.back();
        claim.values[i] = std::max(x_T - discounted_strike, 0.0);
    }
    return claim;
}

Claim pure_endowment(const ScenarioSpace& space, double benefit) {
    if (benefit < 0.0 || !std::isfinite(benefit)) {
        throw DomainError("benefit must be nonnegative");
    }
    const Lattice& lat = space.lattice();
    const double discounted = benefit / std::pow(1.0 + lat.params().rho, lat.steps());
    const int alive_idx = alive_state_index(space);

    Claim claim;
    claim.description = "pure_endowment benefit=" + format_double(benefit);
    claim.values.resize(space.size(), 0.0);
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (alive_at_maturity(space, space.signal_of(i), alive_idx)) {
            claim.values[i] = discounted;
        }
    }
    return claim;
}

Claim claim_from_table(const ScenarioSpace& space,
                       const std::vector<std::tuple<int, int, double>>& entries) {
    Claim claim;
    claim.description = "table";
    claim.values.resize(space.size(), 0.0);
    for (const auto& [market_id, signal_id, value] : entries) {
        if (market_id < 0 || market_id >= space.n_market()) {
            throw DomainError("unknown market path id " + std::to_string(market_id));
        }
        if (signal_id < 0 || signal_id >= space.n_signal()) {
            throw DomainError("unknown signal path id " + std::to_string(signal_id));
        }
        if (value < 0.0 || !std::isfinite(value)) {
            throw DomainError("claim values must be nonnegative, got " + std::to_string(value));
        }
        claim.values[space.scenario_index(market_id, signal_id)] = value;
    }
    return claim;
}

Claim load_claim_csv(const ScenarioSpace& space, std::istream& in) {
    std::vector<std::tuple<int, int, double>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
            throw DomainError("claim csv line " + std::to_string(line_no) +
                              ": expected market_path_id,signal_path_id,value");
        }
        if (line_no == 1 && a == "market_path_id") continue;  // header
        try {
            entries.emplace_back(std::stoi(a), std::stoi(b), std::stod(c));
        } catch (const std::exception&) {
            throw DomainError("claim csv line " + std::to_string(line_no) + ": bad number");
        }
    }
    Claim claim = claim_from_table(space, entries);
    claim.description = "csv table";
    return claim;
}

Claim load_claim_csv_file(const ScenarioSpace& space, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open claim table: " + path);
    return load_claim_csv(space, in);
}

void write_claim_csv(const ScenarioSpace& space, const Claim& claim, std::ostream& out) {
    out << "market_path_id,signal_path_id,value\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << space.market_of(i) << ',' << space.signal_of(i) << ','
            << format_double(claim.values[i]) << '\n';
    }
}

} // namespace sfhedge
