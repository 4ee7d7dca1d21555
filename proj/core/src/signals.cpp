#include "sfhedge/signals.hpp"

#include <cmath>
#include <string>

#include "sfhedge/numerics.hpp"

namespace sfhedge {

namespace {
constexpr double kProbTol = 1e-12;

void check_row(const std::vector<double>& row, const std::string& where) {
    KahanSum sum;
    for (double v : row) {
        if (v < 0.0 || v > 1.0 || !std::isfinite(v)) {
            throw DomainError("probability outside [0,1] in " + where);
        }
        sum.add(v);
    }
    if (std::fabs(sum.value() - 1.0) > kProbTol) {
        throw DomainError("probability row does not sum to 1 in " + where +
                          " (sum = " + std::to_string(sum.value()) + ")");
    }
}
} // namespace

void SignalModel::validate() const {
    const int n = n_times();
    if (static_cast<int>(state_labels.size()) != n ||
        static_cast<int>(transitions.size()) != n) {
        throw DomainError("signal model shape mismatch: times/state_labels/transitions");
    }
    for (int i = 0; i < n; ++i) {
        if (times[static_cast<std::size_t>(i)] < 1) {
            throw DomainError("signal times must be >= 1");
        }
        if (i > 0 && times[static_cast<std::size_t>(i)] <= times[static_cast<std::size_t>(i) - 1]) {
            throw DomainError("signal times must be strictly increasing");
        }
        if (n_states(i) < 1) {
            throw DomainError("empty state set at signal time index " + std::to_string(i));
        }
        const auto& matrix = transitions[static_cast<std::size_t>(i)];
        const std::size_t expected_rows = (i == 0) ? 1 : static_cast<std::size_t>(n_states(i - 1));
        if (matrix.size() != expected_rows) {
            throw DomainError("transition matrix row count mismatch at index " + std::to_string(i));
        }
        for (const auto& row : matrix) {
            if (row.size() != static_cast<std::size_t>(n_states(i))) {
                throw DomainError("transition matrix column count mismatch at index " +
                                  std::to_string(i));
            }
            check_row(row, "transition block " + std::to_string(i));
        }
    }
}

SignalModel mortality_model(int n_periods, const std::vector<double>& death_probs) {
    std::vector<int> times(static_cast<std::size_t>(n_periods));
    for (int i = 0; i < n_periods; ++i) times[static_cast<std::size_t>(i)] = i + 1;
    return mortality_model_at(times, death_probs);
}

SignalModel mortality_model_at(const std::vector<int>& times,
                               const std::vector<double>& death_probs) {
    if (times.size() != death_probs.size()) {
        throw DomainError("mortality model needs one death probability per signal time");
    }
    SignalModel model;
    model.times = times;
    const int n = static_cast<int>(times.size());
    for (int i = 0; i < n; ++i) {
        const double dp = death_probs[static_cast<std::size_t>(i)];
        if (dp < 0.0 || dp > 1.0 || !std::isfinite(dp)) {
            throw DomainError("death probability outside [0,1]: " + std::to_string(dp));
        }
        model.state_labels.push_back({"alive", "dead"});
        if (i == 0) {
            model.transitions.push_back({{1.0 - dp, dp}});
        } else {
            // dead is absorbing
            model.transitions.push_back({{1.0 - dp, dp}, {0.0, 1.0}});
        }
    }
    model.validate();
    return model;
}

std::vector<SignalPath> enumerate_signal_paths(const SignalModel& model, std::size_t path_cap) {
    model.validate();

    std::vector<SignalPath> paths;
    const int n = model.n_times();
    if (n == 0) {
        paths.push_back(SignalPath{0, {}, 1.0});
        return paths;
    }

    // Depth-first product of the state sets in lexicographic order,
    // dropping zero-probability branches as soon as they appear.
    std::vector<int> states(static_cast<std::size_t>(n));
    auto extend = [&](auto&& self, int level, double pi) -> void {
        if (level == n) {
            SignalPath path;
            path.id = static_cast<int>(paths.size());
            path.states = states;
            path.pi = pi;
            paths.push_back(std::move(path));
            if (paths.size() > path_cap) {
                throw CapacityError("signal path count exceeds cap = " + std::to_string(path_cap));
            }
            return;
        }
        const auto& matrix = model.transitions[static_cast<std::size_t>(level)];
        const int prev = (level == 0) ? 0 : states[static_cast<std::size_t>(level) - 1];
        const auto& row = matrix[static_cast<std::size_t>(prev)];
        for (int s = 0; s < model.n_states(level); ++s) {
            const double step_p = row[static_cast<std::size_t>(s)];
            if (step_p <= 0.0) continue;
            states[static_cast<std::size_t>(level)] = s;
            self(self, level + 1, pi * step_p);
        }
    };
    extend(extend, 0, 1.0);
    return paths;
}

} // namespace sfhedge
