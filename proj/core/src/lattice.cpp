#include "sfhedge/lattice.hpp"

#include <cmath>
#include <string>

#include "sfhedge/numerics.hpp"

namespace sfhedge {

Lattice Lattice::build(const LatticeParams& params) {
    if (!(params.s0 > 0.0)) {
        throw DomainError("s0 must be positive, got " + std::to_string(params.s0));
    }
    if (params.steps < 1) {
        throw DomainError("steps must be >= 1, got " + std::to_string(params.steps));
    }
    if (params.steps > params.max_steps) {
        throw CapacityError("steps = " + std::to_string(params.steps) +
                            " exceeds max_steps = " + std::to_string(params.max_steps) +
                            " (2^N paths are materialized)");
    }
    if (!(params.d > 0.0)) {
        throw DomainError("down factor must be positive, got " + std::to_string(params.d));
    }
    const double growth = 1.0 + params.rho;
    if (!(params.d < growth && growth < params.u)) {
        throw ArbitrageError("no-arbitrage requires d < 1+rho < u, got d = " +
                             std::to_string(params.d) + ", 1+rho = " + std::to_string(growth) +
                             ", u = " + std::to_string(params.u));
    }
    if (!(params.p_up > 0.0 && params.p_up < 1.0)) {
        throw DomainError("p_up must lie in (0,1), got " + std::to_string(params.p_up));
    }

    Lattice lat;
    lat.params_ = params;
    lat.q_ = (growth - params.d) / (params.u - params.d);

    const int n = params.steps;
    // Node prices grow multiplicatively in discounted terms: an up move
    // scales by u/(1+rho), a down move by d/(1+rho).
    const double gu = params.u / growth;
    const double gd = params.d / growth;
    lat.node_prices_.resize(static_cast<std::size_t>(n) + 1);
    lat.node_prices_[0] = {params.s0};
    for (int t = 0; t < n; ++t) {
        const auto& cur = lat.node_prices_[static_cast<std::size_t>(t)];
        auto& next = lat.node_prices_[static_cast<std::size_t>(t) + 1];
        next.resize(cur.size() * 2);
        const std::uint32_t bit = 1u << t;
        for (std::uint32_t prefix = 0; prefix < cur.size(); ++prefix) {
            next[prefix] = cur[prefix] * gd;
            next[prefix | bit] = cur[prefix] * gu;
        }
    }

    const std::size_t n_paths = std::size_t{1} << n;
    lat.paths_.resize(n_paths);
    for (std::size_t id = 0; id < n_paths; ++id) {
        MarketPath& path = lat.paths_[id];
        path.id = static_cast<int>(id);
        path.prices.resize(static_cast<std::size_t>(n) + 1);
        double p = 1.0, r = 1.0;
        const std::uint32_t bits = static_cast<std::uint32_t>(id);
        for (int t = 0; t <= n; ++t) {
            path.prices[static_cast<std::size_t>(t)] =
                lat.node_prices_[static_cast<std::size_t>(t)][bits & ((1u << t) - 1u)];
        }
        for (int t = 0; t < n; ++t) {
            if (bits & (1u << t)) {
                p *= params.p_up;
                r *= lat.q_;
            } else {
                p *= 1.0 - params.p_up;
                r *= 1.0 - lat.q_;
            }
        }
        path.p = p;
        path.r = r;
    }
    return lat;
}

double Lattice::node_price(int step, std::uint32_t prefix) const {
    return node_prices_[static_cast<std::size_t>(step)][prefix & ((1u << step) - 1u)];
}

double price(const Lattice& lattice, std::span<const double> terminal) {
    if (terminal.size() != static_cast<std::size_t>(lattice.n_paths())) {
        throw DomainError("terminal payoff table size does not match path count");
    }
    KahanSum sum;
    for (int id = 0; id < lattice.n_paths(); ++id) {
        const double h = terminal[static_cast<std::size_t>(id)];
        if (h < 0.0) {
            throw DomainError("terminal payoff must be nonnegative, got " + std::to_string(h) +
                              " on path " + std::to_string(id));
        }
        sum.add(lattice.path(id).r * h);
    }
    return sum.value();
}

Strategy replicate(const Lattice& lattice, std::span<const double> terminal) {
    if (terminal.size() != static_cast<std::size_t>(lattice.n_paths())) {
        throw DomainError("terminal payoff table size does not match path count");
    }
    for (std::size_t i = 0; i < terminal.size(); ++i) {
        if (terminal[i] < 0.0) {
            throw DomainError("terminal payoff must be nonnegative");
        }
    }

    const int n = lattice.steps();
    const double q = lattice.q();

    Strategy strat;
    strat.values.resize(static_cast<std::size_t>(n) + 1);
    strat.positions.resize(static_cast<std::size_t>(n));
    strat.values[static_cast<std::size_t>(n)].assign(terminal.begin(), terminal.end());

    for (int t = n - 1; t >= 0; --t) {
        const auto& next = strat.values[static_cast<std::size_t>(t) + 1];
        auto& cur = strat.values[static_cast<std::size_t>(t)];
        auto& pos = strat.positions[static_cast<std::size_t>(t)];
        const std::size_t n_nodes = std::size_t{1} << t;
        cur.resize(n_nodes);
        pos.resize(n_nodes);
        const std::uint32_t bit = 1u << t;
        for (std::uint32_t prefix = 0; prefix < n_nodes; ++prefix) {
            const double vu = next[prefix | bit];
            const double vd = next[prefix];
            const double xu = lattice.node_price(t + 1, prefix | bit);
            const double xd = lattice.node_price(t + 1, prefix);
            cur[prefix] = q * vu + (1.0 - q) * vd;
            pos[prefix] = (vu - vd) / (xu - xd);  // xu > xd since u > d
        }
    }
    strat.v0 = strat.values[0][0];
    return strat;
}

} // namespace sfhedge
