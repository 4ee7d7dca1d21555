#include "sfhedge/scenario.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "sfhedge/numerics.hpp"

namespace sfhedge {

ScenarioSpace ScenarioSpace::build(Lattice lattice, SignalModel signals,
                                   std::size_t scenario_cap, std::size_t signal_path_cap) {
    signals.validate();
    if (!signals.times.empty() && signals.times.back() > lattice.steps()) {
        throw DomainError("signal time " + std::to_string(signals.times.back()) +
                          " lies beyond the last tree step " + std::to_string(lattice.steps()));
    }

    ScenarioSpace space;
    space.signal_paths_ = enumerate_signal_paths(signals, signal_path_cap);
    space.lattice_ = std::move(lattice);
    space.signals_ = std::move(signals);

    const std::size_t n_scenarios =
        static_cast<std::size_t>(space.lattice_.n_paths()) * space.signal_paths_.size();
    if (n_scenarios > scenario_cap) {
        throw CapacityError("scenario count " + std::to_string(n_scenarios) +
                            " exceeds cap = " + std::to_string(scenario_cap));
    }

    space.p_.resize(n_scenarios);
    space.r_.resize(n_scenarios);
    std::size_t idx = 0;
    for (const MarketPath& x : space.lattice_.paths()) {
        for (const SignalPath& s : space.signal_paths_) {
            space.p_[idx] = x.p * s.pi;
            space.r_[idx] = x.r * s.pi;
            ++idx;
        }
    }
    return space;
}

double ScenarioSpace::expect_p(std::span<const double> values) const {
    if (values.size() != size()) throw DomainError("scenario table size mismatch");
    KahanSum sum;
    for (std::size_t i = 0; i < values.size(); ++i) sum.add(p_[i] * values[i]);
    return sum.value();
}

double ScenarioSpace::expect_r(std::span<const double> values) const {
    if (values.size() != size()) throw DomainError("scenario table size mismatch");
    KahanSum sum;
    for (std::size_t i = 0; i < values.size(); ++i) sum.add(r_[i] * values[i]);
    return sum.value();
}

double ScenarioSpace::expect_r_market(std::span<const double> per_path) const {
    if (per_path.size() != static_cast<std::size_t>(n_market())) {
        throw DomainError("market table size mismatch");
    }
    KahanSum sum;
    for (int id = 0; id < n_market(); ++id) {
        sum.add(lattice_.path(id).r * per_path[static_cast<std::size_t>(id)]);
    }
    return sum.value();
}

namespace {

// Packs (market prefix, signal prefix length j) into one key. Signal
// prefixes are coded positionally; the code stays far below 2^31 because
// the signal path count is capped.
std::uint64_t pack_key(std::uint32_t market_prefix, const std::vector<int>& states,
                       int prefix_len, const SignalModel& model) {
    std::uint64_t code = 0;
    for (int i = prefix_len - 1; i >= 0; --i) {
        code = code * static_cast<std::uint64_t>(model.n_states(i)) +
               static_cast<std::uint64_t>(states[static_cast<std::size_t>(i)]);
    }
    return (code << 20) | static_cast<std::uint64_t>(market_prefix);
}

} // namespace

int ScenarioSpace::atom_partition(SigmaField field, std::vector<int>& atom_of_scenario) const {
    const std::size_t n = size();
    atom_of_scenario.assign(n, 0);

    using Kind = SigmaField::Kind;
    if (field.kind == Kind::Trivial) return n == 0 ? 0 : 1;
    if (field.kind == Kind::Full) {
        for (std::size_t i = 0; i < n; ++i) atom_of_scenario[i] = static_cast<int>(i);
        return static_cast<int>(n);
    }
    if (field.kind == Kind::MarketTerminal) {
        for (std::size_t i = 0; i < n; ++i) atom_of_scenario[i] = market_of(i);
        return n_market();
    }

    int market_step = 0;
    int signal_prefix_len = 0;
    const int n_times = signals_.n_times();
    switch (field.kind) {
        case Kind::FullInfoAt: {
            market_step = field.index;
            if (market_step < 0 || market_step > lattice_.steps()) {
                throw DomainError("conditioning step out of range");
            }
            while (signal_prefix_len < n_times &&
                   signals_.times[static_cast<std::size_t>(signal_prefix_len)] <= market_step) {
                ++signal_prefix_len;
            }
            break;
        }
        case Kind::SignalTime: {
            if (field.index < 0 || field.index > n_times) {
                throw DomainError("signal time index out of range");
            }
            signal_prefix_len = field.index;
            market_step = (field.index == 0)
                              ? 0
                              : signals_.times[static_cast<std::size_t>(field.index) - 1];
            break;
        }
        case Kind::MarketAtSignalGap: {
            if (field.index < 1 || field.index > n_times) {
                throw DomainError("signal time index out of range");
            }
            signal_prefix_len = field.index - 1;
            market_step = signals_.times[static_cast<std::size_t>(field.index) - 1];
            break;
        }
        default:
            throw DomainError("unsupported sigma-field");
    }

    const std::uint32_t mask = (market_step >= 32) ? ~0u : ((1u << market_step) - 1u);
    std::unordered_map<std::uint64_t, int> ids;
    ids.reserve(n);
    int next_id = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t mprefix =
            static_cast<std::uint32_t>(market_of(i)) & mask;
        const auto& states = signal_paths_[static_cast<std::size_t>(signal_of(i))].states;
        const std::uint64_t key = pack_key(mprefix, states, signal_prefix_len, signals_);
        auto [it, inserted] = ids.try_emplace(key, next_id);
        if (inserted) ++next_id;
        atom_of_scenario[i] = it->second;
    }
    return next_id;
}

RandomVariable cond_expectation(const ScenarioSpace& space, const RandomVariable& M,
                                SigmaField field, Measure measure) {
    if (M.values.size() != space.size()) throw DomainError("scenario table size mismatch");

    std::vector<int> atom;
    const int n_atoms = space.atom_partition(field, atom);

    std::vector<KahanSum> weighted(static_cast<std::size_t>(n_atoms));
    std::vector<KahanSum> mass(static_cast<std::size_t>(n_atoms));
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double w = (measure == Measure::Martingale) ? space.r(i) : space.p(i);
        const std::size_t a = static_cast<std::size_t>(atom[i]);
        weighted[a].add(w * M.values[i]);
        mass[a].add(w);
    }

    std::vector<double> per_atom(static_cast<std::size_t>(n_atoms));
    for (int a = 0; a < n_atoms; ++a) {
        const double m = mass[static_cast<std::size_t>(a)].value();
        if (m <= 0.0) {
            throw DomainError("conditioning atom has zero probability");
        }
        per_atom[static_cast<std::size_t>(a)] = weighted[static_cast<std::size_t>(a)].value() / m;
    }

    RandomVariable out;
    out.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        out.values[i] = per_atom[static_cast<std::size_t>(atom[i])];
    }
    return out;
}

} // namespace sfhedge
