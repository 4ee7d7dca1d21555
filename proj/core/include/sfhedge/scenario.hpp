#ifndef SFHEDGE_SCENARIO_HPP
#define SFHEDGE_SCENARIO_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sfhedge/lattice.hpp"
#include "sfhedge/signals.hpp"

namespace sfhedge {

/// A table of one real value per scenario.
struct RandomVariable {
    std::vector<double> values;

    static RandomVariable constant(std::size_t n, double c) {
        return RandomVariable{std::vector<double>(n, c)};
    }
};

enum class Measure { Physical, Martingale };

/// The sigma-fields the library conditions on, each represented by the
/// partition of scenarios into atoms:
///   MarketTerminal     full price history            (atoms = market paths)
///   SignalTime(i)      info at the i-th signal time  (market prefix + signals 1..i)
///   MarketAtSignalGap(i) market prefix at the i-th signal time + signals 1..i-1
///   FullInfoAt(t)      everything observed by step t
///   Full               price history + all signals   (atoms = scenarios)
struct SigmaField {
    enum class Kind { Trivial, MarketTerminal, Full, FullInfoAt, SignalTime, MarketAtSignalGap };
    Kind kind = Kind::Trivial;
    int index = 0;  ///< step for FullInfoAt, 1-based i for the signal kinds

    static SigmaField trivial() { return {Kind::Trivial, 0}; }
    static SigmaField market_terminal() { return {Kind::MarketTerminal, 0}; }
    static SigmaField full() { return {Kind::Full, 0}; }
    static SigmaField full_info_at(int step) { return {Kind::FullInfoAt, step}; }
    static SigmaField signal_time(int i) { return {Kind::SignalTime, i}; }
    static SigmaField market_at_signal_gap(int i) { return {Kind::MarketAtSignalGap, i}; }
};

/// Joint space of (market path, signal path) pairs carrying the physical
/// weights p(x,s) = p(x) pi(s) and the extended martingale weights
/// r(x,s) = r(x) pi(s). The likelihood ratio between the two depends on the
/// market path only, so the signal law conditional on the market is the same
/// under both measures. Immutable after construction.
class ScenarioSpace {
public:
    static ScenarioSpace build(Lattice lattice, SignalModel signals,
                               std::size_t scenario_cap = (std::size_t{1} << 21),
                               std::size_t signal_path_cap = 100000);

    std::size_t size() const { return p_.size(); }
    int n_market() const { return lattice_.n_paths(); }
    int n_signal() const { return static_cast<int>(signal_paths_.size()); }

    int market_of(std::size_t scenario) const { return static_cast<int>(scenario / signal_paths_.size()); }
    int signal_of(std::size_t scenario) const { return static_cast<int>(scenario % signal_paths_.size()); }
    std::size_t scenario_index(int market_id, int signal_id) const {
        return static_cast<std::size_t>(market_id) * signal_paths_.size() + static_cast<std::size_t>(signal_id);
    }

    double p(std::size_t scenario) const { return p_[scenario]; }
    double r(std::size_t scenario) const { return r_[scenario]; }
    /// dP/dR, a function of the market path alone.
    double likelihood_p_over_r(std::size_t scenario) const {
        const MarketPath& x = lattice_.path(market_of(scenario));
        return x.p / x.r;
    }

    const Lattice& lattice() const { return lattice_; }
    const SignalModel& signals() const { return signals_; }
    const std::vector<SignalPath>& signal_paths() const { return signal_paths_; }

    /// Expectations over scenarios, Kahan-accumulated in scenario order.
    double expect_p(std::span<const double> values) const;
    double expect_r(std::span<const double> values) const;
    /// Expectation of a per-market-path table under r, accumulated in
    /// path-id order. Canonical for prices and budget comparisons.
    double expect_r_market(std::span<const double> per_path) const;

    /// Atom index per scenario for a supported sigma-field. Atom ids are
    /// assigned in order of first occurrence, so the partition is
    /// deterministic. Returns the number of atoms.
    int atom_partition(SigmaField field, std::vector<int>& atom_of_scenario) const;

private:
    Lattice lattice_;
    SignalModel signals_;
    std::vector<SignalPath> signal_paths_;
    std::vector<double> p_, r_;
};

/// Conditional expectation of M given one of the supported sigma-fields,
/// under the martingale weights by default or the physical ones on request.
/// The result is constant on every atom.
RandomVariable cond_expectation(const ScenarioSpace& space, const RandomVariable& M,
                                SigmaField field, Measure measure = Measure::Martingale);

} // namespace sfhedge

#endif
