#ifndef SFHEDGE_SIGNALS_HPP
#define SFHEDGE_SIGNALS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "sfhedge/errors.hpp"

namespace sfhedge {

/// Finite-state information process observed at a strictly increasing list
/// of tree steps, independent of the market under the physical measure.
/// transitions[0] is the initial distribution over the states revealed at
/// times[0]; transitions[i] maps states at times[i-1] to states at times[i].
/// State labels are opaque; claim builders attach the semantics.
struct SignalModel {
    std::vector<int> times;
    std::vector<std::vector<std::string>> state_labels;     ///< per revealed time
    std::vector<std::vector<std::vector<double>>> transitions;

    int n_times() const { return static_cast<int>(times.size()); }
    int n_states(int i) const { return static_cast<int>(state_labels[static_cast<std::size_t>(i)].size()); }

    /// Checks row sums, time ordering and shape consistency.
    void validate() const;
};

/// One realized state sequence with its physical probability.
struct SignalPath {
    int id = 0;
    std::vector<int> states;  ///< state index at each revealed time
    double pi = 0.0;
};

/// Absorbing two-state {alive, dead} chain observed at steps 1..n_periods;
/// death_probs[i] is the probability of dying in period i conditional on
/// being alive at its start.
SignalModel mortality_model(int n_periods, const std::vector<double>& death_probs);

/// Same chain observed at explicit tree steps.
SignalModel mortality_model_at(const std::vector<int>& times,
                               const std::vector<double>& death_probs);

/// All state sequences with positive probability, in lexicographic order of
/// state indices. Zero-probability sequences are pruned; the remaining
/// probabilities sum to one.
std::vector<SignalPath> enumerate_signal_paths(const SignalModel& model,
                                               std::size_t path_cap = 100000);

} // namespace sfhedge

#endif
