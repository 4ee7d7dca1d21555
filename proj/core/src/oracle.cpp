#include "sfhedge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "sfhedge/numerics.hpp"
#include "sfhedge/rng.hpp"

namespace sfhedge {

namespace {

constexpr double kBudgetTol = 1e-12;

// Self-contained rebuild of the per-path level/slope data straight from the
// definitions. The point of the oracle is to not share optimization code
// with the solver, so the small duplication is deliberate.
struct OraclePath {
    std::vector<double> levels;  // distinct positive payoffs, ascending
    std::vector<double> slopes;  // marginal gain per unit budget up to each level
    double envelope = 0.0;
    double cost = 0.0;  // r(x)
};

std::vector<OraclePath> oracle_paths(const ScenarioSpace& space, const Claim& claim) {
    std::vector<OraclePath> out(static_cast<std::size_t>(space.n_market()));
    std::vector<std::pair<double, double>> positive;
    for (int x = 0; x < space.n_market(); ++x) {
        OraclePath& op = out[static_cast<std::size_t>(x)];
        const MarketPath& path = space.lattice().path(x);
        op.cost = path.r;
        positive.clear();
        for (int s = 0; s < space.n_signal(); ++s) {
            const double d = claim.values[space.scenario_index(x, s)];
            op.envelope = std::max(op.envelope, d);
            if (d > 0.0) {
                positive.emplace_back(d, space.signal_paths()[static_cast<std::size_t>(s)].pi);
            }
        }
        if (positive.empty()) continue;
        std::sort(positive.begin(), positive.end());
        for (std::size_t j = 0; j < positive.size(); ++j) {
            if (j > 0 && positive[j].first == positive[j - 1].first) continue;
            KahanSum w;
            for (std::size_t m = j; m < positive.size(); ++m) {
                w.add(positive[m].second / positive[m].first);
            }
            op.levels.push_back(positive[j].first);
            op.slopes.push_back((path.p / path.r) * w.value());
        }
    }
    return out;
}

double candidate_cost(const ScenarioSpace& space, const std::vector<double>& gamma) {
    KahanSum sum;
    for (int x = 0; x < space.n_market(); ++x) {
        sum.add(space.lattice().path(x).r * gamma[static_cast<std::size_t>(x)]);
    }
    return sum.value();
}

double candidate_ratio(const ScenarioSpace& space, const Claim& claim,
                       const std::vector<double>& gamma) {
    KahanSum sum;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double d = claim.values[i];
        const double g = gamma[static_cast<std::size_t>(space.market_of(i))];
        sum.add(space.p(i) * (d <= 0.0 ? 1.0 : std::min(1.0, g / d)));
    }
    return sum.value();
}

} // namespace

double brute_force_optimal(const ScenarioSpace& space, const Claim& claim,
                           double budget, const OracleConfig& cfg) {
    if (claim.values.size() != space.size()) {
        throw DomainError("claim table size does not match scenario space");
    }
    if (space.size() > cfg.scenario_cap) {
        throw CapacityError("scenario count " + std::to_string(space.size()) +
                            " exceeds oracle cap = " + std::to_string(cfg.scenario_cap));
    }
    if (budget < 0.0) throw DomainError("budget must be nonnegative");
    if (cfg.grid_points < 2) throw DomainError("grid_points must be >= 2");

    const auto paths = oracle_paths(space, claim);
    const int n_market = space.n_market();

    std::vector<double> slope_values;
    for (const OraclePath& op : paths) {
        slope_values.insert(slope_values.end(), op.slopes.begin(), op.slopes.end());
    }
    std::sort(slope_values.begin(), slope_values.end());
    slope_values.erase(std::unique(slope_values.begin(), slope_values.end()),
                       slope_values.end());

    // Threshold candidates: every observed slope, midpoints between
    // neighbours, and sentinels below and above the whole range.
    std::vector<double> thresholds;
    if (!slope_values.empty()) {
        thresholds.push_back(slope_values.front() * 0.5);
        for (std::size_t i = 0; i < slope_values.size(); ++i) {
            thresholds.push_back(slope_values[i]);
            if (i + 1 < slope_values.size()) {
                thresholds.push_back(0.5 * (slope_values[i] + slope_values[i + 1]));
            }
        }
        thresholds.push_back(slope_values.back() * 2.0);
    }

    std::vector<double> best_gamma(static_cast<std::size_t>(n_market), 0.0);
    double best = candidate_ratio(space, claim, best_gamma);

    auto consider = [&](const std::vector<double>& gamma) {
        if (candidate_cost(space, gamma) > budget + kBudgetTol) return;
        const double value = candidate_ratio(space, claim, gamma);
        if (value > best) {
            best = value;
            best_gamma = gamma;
        }
    };

    std::vector<double> gamma(static_cast<std::size_t>(n_market));
    for (double k : thresholds) {
        // Two level targets per threshold: marginal gain >= k and > k. They
        // differ exactly at tied slopes, and the strict one is the feasible
        // starting point when funding every tied segment would overshoot.
        for (bool strict : {false, true}) {
            for (int x = 0; x < n_market; ++x) {
                const OraclePath& op = paths[static_cast<std::size_t>(x)];
                double g = 0.0;
                for (std::size_t j = 0; j < op.levels.size(); ++j) {
                    if (strict ? op.slopes[j] > k : op.slopes[j] >= k) g = op.levels[j];
                }
                gamma[static_cast<std::size_t>(x)] = g;
            }
            const double cost = candidate_cost(space, gamma);
            if (cost > budget + kBudgetTol) continue;
            consider(gamma);

            const double leftover = budget - cost;
            if (leftover <= 0.0) continue;

            // Spend the leftover on one further segment of a single path.
            for (int x = 0; x < n_market; ++x) {
                const OraclePath& op = paths[static_cast<std::size_t>(x)];
                const double lo = gamma[static_cast<std::size_t>(x)];
                auto it = std::upper_bound(op.levels.begin(), op.levels.end(), lo);
                if (it == op.levels.end()) continue;
                const double capped = std::min(*it, lo + leftover / op.cost);
                std::vector<double> extended = gamma;
                extended[static_cast<std::size_t>(x)] = capped;
                consider(extended);
            }

            // Exactly tied slopes: complete the strict target by funding the
            // slope == k segments in (path, level) order, the last one
            // partially. Any other split across equal slopes has the same
            // objective.
            std::vector<double> spread = gamma;
            double pool = leftover;
            for (int x = 0; x < n_market && pool > 0.0; ++x) {
                const OraclePath& op = paths[static_cast<std::size_t>(x)];
                for (std::size_t j = 0; j < op.levels.size(); ++j) {
                    if (op.slopes[j] != k) continue;
                    const double lo = spread[static_cast<std::size_t>(x)];
                    if (op.levels[j] <= lo) continue;
                    const double add = std::min(op.levels[j] - lo, pool / op.cost);
                    spread[static_cast<std::size_t>(x)] = lo + add;
                    pool -= add * op.cost;
                    if (pool <= 0.0) break;
                }
            }
            consider(spread);
        }
    }

    // Coordinate grid refinement around the incumbent.
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        const std::vector<double> base = best_gamma;
        for (int x = 0; x < n_market; ++x) {
            const OraclePath& op = paths[static_cast<std::size_t>(x)];
            if (op.envelope <= 0.0) continue;
            for (int g = 0; g <= cfg.grid_points; ++g) {
                std::vector<double> trial = best_gamma;
                trial[static_cast<std::size_t>(x)] =
                    op.envelope * static_cast<double>(g) / cfg.grid_points;
                consider(trial);
            }
        }
        if (base == best_gamma) break;
    }

    return best;
}

McResult monte_carlo_eval(const ScenarioSpace& space, const Claim& claim,
                          const Strategy& strategy, const McConfig& cfg) {
    if (cfg.n_sims < 1) throw DomainError("n_sims must be >= 1");
    if (claim.values.size() != space.size()) {
        throw DomainError("claim table size does not match scenario space");
    }
    if (strategy.terminal_values().size() != static_cast<std::size_t>(space.n_market())) {
        throw DomainError("strategy shape does not match the lattice");
    }

    const SignalModel& model = space.signals();
    const int n_times = model.n_times();
    const int steps = space.lattice().steps();
    const double p_up = space.lattice().params().p_up;

    // Lookup from sampled state sequences to enumerated signal path ids.
    std::unordered_map<std::uint64_t, int> signal_index;
    signal_index.reserve(space.signal_paths().size());
    auto pack = [&](const std::vector<int>& states) {
        std::uint64_t code = 0;
        for (int i = n_times - 1; i >= 0; --i) {
            code = code * static_cast<std::uint64_t>(model.n_states(i)) +
                   static_cast<std::uint64_t>(states[static_cast<std::size_t>(i)]);
        }
        return code;
    };
    for (const SignalPath& s : space.signal_paths()) {
        signal_index.emplace(pack(s.states), s.id);
    }

    const std::vector<double>& terminal = strategy.terminal_values();

    constexpr long long kBatch = 8192;
    KahanSum sum, sum_sq;
    std::vector<int> states(static_cast<std::size_t>(n_times));
    for (long long done = 0, batch = 0; done < cfg.n_sims; ++batch) {
        SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(batch));
        const long long take = std::min<long long>(kBatch, cfg.n_sims - done);
        for (long long i = 0; i < take; ++i) {
            std::uint32_t market = 0;
            for (int t = 0; t < steps; ++t) {
                if (rng.next_double() < p_up) market |= (1u << t);
            }
            for (int lvl = 0; lvl < n_times; ++lvl) {
                const int prev = (lvl == 0) ? 0 : states[static_cast<std::size_t>(lvl) - 1];
                const auto& row =
                    model.transitions[static_cast<std::size_t>(lvl)][static_cast<std::size_t>(prev)];
                double u = rng.next_double();
                int picked = -1;
                for (int s = 0; s < model.n_states(lvl); ++s) {
                    const double w = row[static_cast<std::size_t>(s)];
                    if (w <= 0.0) continue;
                    picked = s;
                    if (u < w) break;
                    u -= w;
                }
                states[static_cast<std::size_t>(lvl)] = picked;
            }
            const int signal_id = signal_index.at(pack(states));
            const std::size_t scenario =
                space.scenario_index(static_cast<int>(market), signal_id);
            const double v = terminal[static_cast<std::size_t>(market)];
            const double d = claim.values[scenario];
            const double phi = (v >= d) ? 1.0 : v / d;
            sum.add(phi);
            sum_sq.add(phi * phi);
        }
        done += take;
    }

    const double n = static_cast<double>(cfg.n_sims);
    McResult out;
    out.estimate = sum.value() / n;
    if (cfg.n_sims > 1) {
        const double var = std::max(0.0, (sum_sq.value() - n * out.estimate * out.estimate) /
                                             (n * (n - 1.0)));
        out.std_error = std::sqrt(var);
    }
    return out;
}

} // namespace sfhedge
