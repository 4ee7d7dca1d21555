#ifndef SFHEDGE_LATTICE_HPP
#define SFHEDGE_LATTICE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sfhedge/errors.hpp"

namespace sfhedge {

/// Parameters of the one-asset binomial market. Prices are kept discounted
/// by (1+rho)^t throughout, so the per-step rate only enters through the
/// risk-neutral probability and the discounting of payoffs at ingestion.
struct LatticeParams {
    double s0 = 100.0;   ///< initial price, > 0
    double u = 2.0;      ///< up factor
    double d = 0.5;      ///< down factor, 0 < d < 1+rho < u
    double rho = 0.0;    ///< simple per-step rate
    int steps = 1;       ///< number of periods N >= 1
    double p_up = 0.5;   ///< physical up-move probability, in (0,1)
    int max_steps = 16;  ///< hard cap; 2^N paths are materialized
};

/// One full move sequence through the (non-recombining) tree.
/// Bit t of `id` is the move at step t (1 = up), so `id & ((1<<t)-1)`
/// identifies the node reached after t steps.
struct MarketPath {
    int id = 0;
    std::vector<double> prices;  ///< discounted price at steps 0..N
    double p = 0.0;              ///< physical path probability
    double r = 0.0;              ///< risk-neutral path probability
};

/// Self-financing trading strategy on the tree. positions[t] has 2^t
/// entries (hedge held over (t, t+1]), values[t] has 2^t entries (wealth
/// at step t); both are indexed by the t-bit node prefix.
struct Strategy {
    double v0 = 0.0;
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> values;

    int steps() const { return static_cast<int>(positions.size()); }
    const std::vector<double>& terminal_values() const { return values.back(); }
};

/// Complete one-asset finite market: every terminal claim measurable with
/// respect to the price history is exactly replicable, and the risk-neutral
/// path weights r are the unique martingale weights.
class Lattice {
public:
    static Lattice build(const LatticeParams& params);

    const LatticeParams& params() const { return params_; }
    int steps() const { return params_.steps; }
    double q() const { return q_; }
    int n_paths() const { return static_cast<int>(paths_.size()); }
    const std::vector<MarketPath>& paths() const { return paths_; }
    const MarketPath& path(int id) const { return paths_[static_cast<std::size_t>(id)]; }

    /// Discounted price at the node reached by the first `step` moves of
    /// `prefix` (only bits below `step` are read).
    double node_price(int step, std::uint32_t prefix) const;

private:
    LatticeParams params_;
    double q_ = 0.0;
    std::vector<std::vector<double>> node_prices_;  ///< [t][prefix]
    std::vector<MarketPath> paths_;
};

/// Arbitrage-free price of a terminal per-path payoff: sum of r(x) H(x).
/// Kahan-accumulated in path-id order; this is the canonical summation used
/// for every budget comparison in the library.
double price(const Lattice& lattice, std::span<const double> terminal);

/// Exact replication of a terminal per-path payoff by backward induction.
/// The returned strategy satisfies V_T = H on every path and the usual
/// delta rule at every node.
Strategy replicate(const Lattice& lattice, std::span<const double> terminal);

} // namespace sfhedge

#endif
