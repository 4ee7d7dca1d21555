#include "sfhedge/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "sfhedge/numerics.hpp"
#include "sfhedge/report.hpp"

namespace sfhedge {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

class KeyTable {
public:
    explicit KeyTable(std::map<std::string, std::string> pairs) : pairs_(std::move(pairs)) {}

    bool has(const std::string& key) const { return pairs_.count(key) > 0; }

    std::string take(const std::string& key) {
        auto it = pairs_.find(key);
        if (it == pairs_.end()) throw ConfigError("missing required key: " + key);
        used_.insert(key);
        return it->second;
    }
    std::string take_or(const std::string& key, const std::string& fallback) {
        auto it = pairs_.find(key);
        if (it == pairs_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }

    double take_double(const std::string& key) { return parse_double(key, take(key)); }
    double take_double_or(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return parse_double(key, take(key));
    }
    long long take_int(const std::string& key) { return parse_int(key, take(key)); }
    long long take_int_or(const std::string& key, long long fallback) {
        if (!has(key)) return fallback;
        return parse_int(key, take(key));
    }

    std::vector<double> take_double_list(const std::string& key) {
        std::vector<double> out;
        for (const std::string& item : split(take(key), ',')) {
            out.push_back(parse_double(key, item));
        }
        return out;
    }
    std::vector<int> take_int_list(const std::string& key) {
        std::vector<int> out;
        for (const std::string& item : split(take(key), ',')) {
            out.push_back(static_cast<int>(parse_int(key, item)));
        }
        return out;
    }
    std::vector<std::vector<double>> take_matrix(const std::string& key) {
        std::vector<std::vector<double>> out;
        for (const std::string& row : split(take(key), ';')) {
            std::vector<double> r;
            for (const std::string& item : split(row, ',')) r.push_back(parse_double(key, item));
            out.push_back(std::move(r));
        }
        return out;
    }

    void finish() const {
        for (const auto& [key, value] : pairs_) {
            (void)value;
            if (!used_.count(key)) throw ConfigError("unknown key: " + key);
        }
    }

private:
    double parse_double(const std::string& key, const std::string& text) const {
        const std::string t = trim(text);
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (t.empty() || end != t.c_str() + t.size()) {
            throw ConfigError("key " + key + ": cannot parse number '" + text + "'");
        }
        return v;
    }
    long long parse_int(const std::string& key, const std::string& text) const {
        const std::string t = trim(text);
        char* end = nullptr;
        const long long v = std::strtoll(t.c_str(), &end, 10);
        if (t.empty() || end != t.c_str() + t.size()) {
            throw ConfigError("key " + key + ": cannot parse integer '" + text + "'");
        }
        return v;
    }

    std::map<std::string, std::string> pairs_;
    std::set<std::string> used_;
};

bool any_key_with_prefix(const std::map<std::string, std::string>& pairs,
                         const std::string& prefix) {
    auto it = pairs.lower_bound(prefix);
    return it != pairs.end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

} // namespace

RunConfig parse_config_pairs(const std::map<std::string, std::string>& raw) {
    KeyTable keys(raw);
    RunConfig cfg;

    cfg.market.s0 = keys.take_double("market.s0");
    cfg.market.u = keys.take_double("market.u");
    cfg.market.d = keys.take_double("market.d");
    cfg.market.rho = keys.take_double_or("market.rho", 0.0);
    cfg.market.steps = static_cast<int>(keys.take_int("market.steps"));
    cfg.market.p_up = keys.take_double("market.p_up");
    cfg.market.max_steps = static_cast<int>(keys.take_int_or("market.max_steps", 16));

    const std::string signal_type = keys.take_or("signals.type", "none");
    if (signal_type == "none") {
        cfg.signals.type = SignalSpec::Type::None;
    } else if (signal_type == "mortality") {
        cfg.signals.type = SignalSpec::Type::Mortality;
        cfg.signals.death_probs = keys.take_double_list("signals.death_probs");
        if (keys.has("signals.times")) {
            cfg.signals.times = keys.take_int_list("signals.times");
        } else {
            for (std::size_t i = 0; i < cfg.signals.death_probs.size(); ++i) {
                cfg.signals.times.push_back(static_cast<int>(i) + 1);
            }
        }
    } else if (signal_type == "chain") {
        cfg.signals.type = SignalSpec::Type::Chain;
        cfg.signals.times = keys.take_int_list("signals.times");
        for (const std::string& s : split(keys.take("signals.states"), ',')) {
            cfg.signals.states.push_back(s);
        }
        cfg.signals.initial = keys.take_double_list("signals.initial");
        cfg.signals.transition = keys.take_matrix("signals.transition");
    } else {
        throw ConfigError("signals.type must be none, mortality or chain; got '" +
                          signal_type + "'");
    }

    const std::string claim_type = keys.take("claim.type");
    if (claim_type == "unit_linked_call") {
        cfg.claim.type = ClaimSpec::Type::UnitLinkedCall;
        cfg.claim.strike = keys.take_double("claim.strike");
    } else if (claim_type == "pure_endowment") {
        cfg.claim.type = ClaimSpec::Type::PureEndowment;
        cfg.claim.benefit = keys.take_double("claim.benefit");
    } else if (claim_type == "table") {
        cfg.claim.type = ClaimSpec::Type::Table;
        cfg.claim.table_path = keys.take("claim.table");
    } else {
        throw ConfigError("claim.type must be unit_linked_call, pure_endowment or table; got '" +
                          claim_type + "'");
    }

    cfg.budget = keys.take_double("budget");
    cfg.outputs = keys.take_or("outputs", "out");

    if (any_key_with_prefix(raw, "verify.oracle.")) {
        OracleConfig oc;
        oc.grid_points = static_cast<int>(keys.take_int_or("verify.oracle.grid_points", 33));
        oc.refine_rounds = static_cast<int>(keys.take_int_or("verify.oracle.refine_rounds", 1));
        oc.scenario_cap = static_cast<std::size_t>(keys.take_int_or("verify.oracle.cap", 4096));
        cfg.oracle = oc;
    }
    if (any_key_with_prefix(raw, "verify.mc.")) {
        McConfig mc;
        mc.n_sims = keys.take_int_or("verify.mc.n_sims", 100000);
        mc.seed = static_cast<std::uint64_t>(keys.take_int_or("verify.mc.seed", 0));
        cfg.mc = mc;
    }

    keys.finish();
    return cfg;
}

RunConfig parse_config(std::istream& in, const std::string& origin) {
    std::map<std::string, std::string> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + text + "'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        if (pairs.count(key)) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                              key + "'");
        }
        pairs[key] = value;
    }
    try {
        return parse_config_pairs(pairs);
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in, path);
}

std::vector<std::pair<std::string, std::string>> config_to_pairs(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    auto put = [&](const std::string& k, const std::string& v) { out.emplace_back(k, v); };
    auto put_d = [&](const std::string& k, double v) { put(k, format_double(v)); };

    put_d("market.s0", cfg.market.s0);
    put_d("market.u", cfg.market.u);
    put_d("market.d", cfg.market.d);
    put_d("market.rho", cfg.market.rho);
    put("market.steps", std::to_string(cfg.market.steps));
    put_d("market.p_up", cfg.market.p_up);
    put("market.max_steps", std::to_string(cfg.market.max_steps));

    auto join_ints = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v[i]);
        }
        return s;
    };
    auto join_doubles = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += format_double(v[i]);
        }
        return s;
    };

    switch (cfg.signals.type) {
        case SignalSpec::Type::None:
            put("signals.type", "none");
            break;
        case SignalSpec::Type::Mortality:
            put("signals.type", "mortality");
            put("signals.times", join_ints(cfg.signals.times));
            put("signals.death_probs", join_doubles(cfg.signals.death_probs));
            break;
        case SignalSpec::Type::Chain: {
            put("signals.type", "chain");
            put("signals.times", join_ints(cfg.signals.times));
            std::string labels;
            for (std::size_t i = 0; i < cfg.signals.states.size(); ++i) {
                if (i) labels += ',';
                labels += cfg.signals.states[i];
            }
            put("signals.states", labels);
            put("signals.initial", join_doubles(cfg.signals.initial));
            std::string matrix;
            for (std::size_t i = 0; i < cfg.signals.transition.size(); ++i) {
                if (i) matrix += ';';
                matrix += join_doubles(cfg.signals.transition[i]);
            }
            put("signals.transition", matrix);
            break;
        }
    }

    switch (cfg.claim.type) {
        case ClaimSpec::Type::UnitLinkedCall:
            put("claim.type", "unit_linked_call");
            put_d("claim.strike", cfg.claim.strike);
            break;
        case ClaimSpec::Type::PureEndowment:
            put("claim.type", "pure_endowment");
            put_d("claim.benefit", cfg.claim.benefit);
            break;
        case ClaimSpec::Type::Table:
            put("claim.type", "table");
            put("claim.table", cfg.claim.table_path);
            break;
    }

    put_d("budget", cfg.budget);
    put("outputs", cfg.outputs);
    if (cfg.oracle) {
        put("verify.oracle.grid_points", std::to_string(cfg.oracle->grid_points));
        put("verify.oracle.refine_rounds", std::to_string(cfg.oracle->refine_rounds));
        put("verify.oracle.cap", std::to_string(cfg.oracle->scenario_cap));
    }
    if (cfg.mc) {
        put("verify.mc.n_sims", std::to_string(cfg.mc->n_sims));
        put("verify.mc.seed", std::to_string(cfg.mc->seed));
    }
    return out;
}

SignalModel make_signal_model(const SignalSpec& spec) {
    switch (spec.type) {
        case SignalSpec::Type::None:
            return SignalModel{};
        case SignalSpec::Type::Mortality:
            return mortality_model_at(spec.times, spec.death_probs);
        case SignalSpec::Type::Chain: {
            SignalModel model;
            model.times = spec.times;
            const int n = static_cast<int>(spec.times.size());
            for (int i = 0; i < n; ++i) {
                model.state_labels.push_back(spec.states);
                if (i == 0) {
                    model.transitions.push_back({spec.initial});
                } else {
                    model.transitions.push_back(spec.transition);
                }
            }
            model.validate();
            return model;
        }
    }
    throw DomainError("unreachable signal spec type");
}

std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> diags;
    const auto& m = cfg.market;

    if (!(m.s0 > 0.0)) diags.push_back("market.s0 must be positive");
    const double growth = 1.0 + m.rho;
    if (!(m.d > 0.0)) diags.push_back("market.d must be positive");
    if (!(m.d < growth && growth < m.u)) {
        diags.push_back("no-arbitrage condition violated: need d < 1+rho < u, got d = " +
                        format_double(m.d) + ", 1+rho = " + format_double(growth) +
                        ", u = " + format_double(m.u));
    }
    if (!(m.p_up > 0.0 && m.p_up < 1.0)) diags.push_back("market.p_up must lie in (0,1)");
    if (m.steps < 1) diags.push_back("market.steps must be >= 1");
    if (m.steps > m.max_steps) {
        diags.push_back("capacity: market.steps = " + std::to_string(m.steps) +
                        " exceeds market.max_steps = " + std::to_string(m.max_steps));
    }

    if (cfg.signals.type != SignalSpec::Type::None) {
        const auto& times = cfg.signals.times;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] < 1 || times[i] > m.steps) {
                diags.push_back("signal time " + std::to_string(times[i]) +
                                " outside [1, steps]");
            }
            if (i > 0 && times[i] <= times[i - 1]) {
                diags.push_back("signal times must be strictly increasing");
            }
        }
        try {
            (void)make_signal_model(cfg.signals);
        } catch (const Error& e) {
            diags.push_back(std::string("signals: ") + e.what());
        }
    }

    if (cfg.claim.type == ClaimSpec::Type::UnitLinkedCall && cfg.claim.strike < 0.0) {
        diags.push_back("claim.strike must be nonnegative");
    }
    if (cfg.claim.type == ClaimSpec::Type::PureEndowment && cfg.claim.benefit < 0.0) {
        diags.push_back("claim.benefit must be nonnegative");
    }
    if (cfg.budget < 0.0) diags.push_back("budget must be nonnegative");
    if (cfg.oracle && cfg.oracle->grid_points < 2) {
        diags.push_back("verify.oracle.grid_points must be >= 2");
    }
    if (cfg.mc && cfg.mc->n_sims < 1) diags.push_back("verify.mc.n_sims must be >= 1");

    return diags;
}

} // namespace sfhedge
