#include "sfhedge/solver.hpp"

#include <algorithm>
#include <cmath>

#include "sfhedge/numerics.hpp"

namespace sfhedge {

namespace {

// Per-path payoff data: distinct positive levels in increasing order, and
// for each level the slope of the segment ending there.
struct PathLevels {
    std::vector<double> levels;
    std::vector<double> slopes;
    double envelope = 0.0;  // max payoff over the path's scenarios
};

std::vector<PathLevels> path_levels(const ScenarioSpace& space, const Claim& claim) {
    if (claim.values.size() != space.size()) {
        throw DomainError("claim table size does not match scenario space");
    }
    const int n_market = space.n_market();
    const int n_signal = space.n_signal();
    std::vector<PathLevels> out(static_cast<std::size_t>(n_market));

    std::vector<std::pair<double, double>> positive;  // (payoff, pi)
    for (int x = 0; x < n_market; ++x) {
        PathLevels& pl = out[static_cast<std::size_t>(x)];
        positive.clear();
        for (int s = 0; s < n_signal; ++s) {
            const double d = claim.values[space.scenario_index(x, s)];
            if (d < 0.0) throw DomainError("claim values must be nonnegative");
            pl.envelope = std::max(pl.envelope, d);
            if (d > 0.0) {
                positive.emplace_back(d, space.signal_paths()[static_cast<std::size_t>(s)].pi);
            }
        }
        if (positive.empty()) continue;
        std::sort(positive.begin(), positive.end());

        const MarketPath& path = space.lattice().path(x);
        const double likelihood = path.p / path.r;

        // Suffix sums of pi/D from the top level down give the slope at
        // each distinct level directly from its definition.
        std::vector<double> suffix(positive.size() + 1, 0.0);
        {
            KahanSum acc;
            for (std::size_t j = positive.size(); j-- > 0;) {
                acc.add(positive[j].second / positive[j].first);
                suffix[j] = acc.value();
            }
        }
        for (std::size_t j = 0; j < positive.size(); ++j) {
            if (j > 0 && positive[j].first == positive[j - 1].first) continue;
            pl.levels.push_back(positive[j].first);
            pl.slopes.push_back(likelihood * suffix[j]);
        }
    }
    return out;
}

double phi_value(double gamma, double payoff) {
    if (payoff <= 0.0) return 1.0;
    return std::min(1.0, gamma / payoff);
}

} // namespace

std::vector<SlopeSegment> compute_slopes(const ScenarioSpace& space, const Claim& claim) {
    const auto per_path = path_levels(space, claim);
    std::vector<SlopeSegment> segments;
    for (int x = 0; x < space.n_market(); ++x) {
        const PathLevels& pl = per_path[static_cast<std::size_t>(x)];
        const double cost = space.lattice().path(x).r;
        double lower = 0.0;
        for (std::size_t j = 0; j < pl.levels.size(); ++j) {
            segments.push_back(SlopeSegment{x, lower, pl.levels[j], pl.slopes[j], cost});
            lower = pl.levels[j];
        }
    }
    return segments;
}

ModifiedClaim compute_f(const ScenarioSpace& space, const Claim& claim, double k) {
    if (!(k > 0.0)) {
        throw DomainError("threshold k must be positive; the target is unbounded otherwise");
    }
    const auto per_path = path_levels(space, claim);
    ModifiedClaim gamma;
    gamma.gamma.assign(static_cast<std::size_t>(space.n_market()), 0.0);
    for (int x = 0; x < space.n_market(); ++x) {
        const PathLevels& pl = per_path[static_cast<std::size_t>(x)];
        double best = 0.0;
        for (std::size_t j = 0; j < pl.levels.size(); ++j) {
            if (pl.slopes[j] >= k) best = pl.levels[j];
        }
        gamma.gamma[static_cast<std::size_t>(x)] = best;
    }
    return gamma;
}

SolverResult solve_budget(const ScenarioSpace& space, const Claim& claim, double budget) {
    if (budget < 0.0 || !std::isfinite(budget)) {
        throw DomainError("budget must be nonnegative");
    }

    const int n_market = space.n_market();
    std::vector<SlopeSegment> segments = compute_slopes(space, claim);

    std::vector<double> envelope(static_cast<std::size_t>(n_market), 0.0);
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto& e = envelope[static_cast<std::size_t>(space.market_of(i))];
        e = std::max(e, claim.values[i]);
    }
    const double full_cost = space.expect_r_market(envelope);

    SolverResult result;
    result.gamma.gamma.assign(static_cast<std::size_t>(n_market), 0.0);

    if (budget >= full_cost) {
        // Enough to fund every level: hand back the envelope itself so the
        // boundary case is exact rather than a sum of increments.
        result.gamma.gamma = envelope;
        result.k = 0.0;
    } else {
        std::vector<std::size_t> order(segments.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (segments[a].slope != segments[b].slope) {
                return segments[a].slope > segments[b].slope;
            }
            if (segments[a].path != segments[b].path) {
                return segments[a].path < segments[b].path;
            }
            return segments[a].upper < segments[b].upper;
        });

        KahanSum spent;
        double k = 0.0;
        bool stopped = false;
        const SlopeSegment* last_funded = nullptr;
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            const SlopeSegment& seg = segments[order[oi]];
            const double cost = seg.cost_per_unit * (seg.upper - seg.lower);
            const double tentative = spent.value() + cost;
            // Allow a few ulps so that budgets computed as path-order sums
            // still fund a segment they cover exactly.
            if (tentative <= budget + summation_slack(tentative, budget)) {
                result.gamma.gamma[static_cast<std::size_t>(seg.path)] = seg.upper;
                spent.add(cost);
                last_funded = &seg;
                continue;
            }
            const double remaining = std::max(0.0, budget - spent.value());
            if (remaining > 0.0) {
                // Marginal segment, funded partially; its slope is the
                // critical threshold at the water level.
                result.gamma.gamma[static_cast<std::size_t>(seg.path)] =
                    std::min(seg.upper, seg.lower + remaining / seg.cost_per_unit);
                k = seg.slope;
            } else {
                // Budget exhausted exactly at a segment boundary (or zero):
                // the water level sits at the top of the last funded
                // segment, or at the bottom of the first one.
                k = last_funded ? last_funded->slope : seg.slope;
            }
            stopped = true;
            break;
        }
        if (!stopped) {
            // All segments funded within slack of the budget.
            k = segments.empty() ? 0.0 : segments[order.back()].slope;
        }
        result.k = k;
    }

    result.budget_used = space.expect_r_market(result.gamma.gamma);
    result.ratio_table = success_ratio_table(space, claim, result.gamma);
    result.success_ratio = space.expect_p(result.ratio_table);
    return result;
}

std::vector<double> success_ratio_table(const ScenarioSpace& space, const Claim& claim,
                                        const ModifiedClaim& gamma) {
    if (claim.values.size() != space.size()) {
        throw DomainError("claim table size does not match scenario space");
    }
    if (gamma.gamma.size() != static_cast<std::size_t>(space.n_market())) {
        throw DomainError("gamma table size does not match market path count");
    }
    std::vector<double> phi(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double g = gamma.gamma[static_cast<std::size_t>(space.market_of(i))];
        if (g < 0.0) throw DomainError("gamma must be nonnegative");
        phi[i] = phi_value(g, claim.values[i]);
    }
    return phi;
}

double success_ratio(const ScenarioSpace& space, const Claim& claim, const ModifiedClaim& gamma) {
    return space.expect_p(success_ratio_table(space, claim, gamma));
}

} // namespace sfhedge
