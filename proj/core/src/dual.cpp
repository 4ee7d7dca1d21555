#include "sfhedge/dual.hpp"

#include <cmath>
#include <string>

#include "sfhedge/numerics.hpp"
#include "sfhedge/superhedge.hpp"

namespace sfhedge {

DualMeasure build_dual_measure(const ScenarioSpace& space, const RandomVariable& M,
                               std::span<const double> level, double alpha) {
    if (M.values.size() != space.size()) {
        throw DomainError("scenario table size mismatch");
    }
    if (level.size() != static_cast<std::size_t>(space.n_market())) {
        throw DomainError("level table size does not match market path count");
    }
    if (alpha < 0.0 || alpha > 1.0 || !std::isfinite(alpha)) {
        throw DomainError("alpha must lie in [0,1]");
    }

    // K must be attainable on every path: some positive-probability
    // scenario reaches it, otherwise a conditional probability below would
    // have an empty event in its denominator.
    {
        const UpperEnvelope env = upper_envelope(space, M);
        for (int x = 0; x < space.n_market(); ++x) {
            if (level[static_cast<std::size_t>(x)] > env.values[static_cast<std::size_t>(x)]) {
                throw MembershipError(
                    "level " + std::to_string(level[static_cast<std::size_t>(x)]) +
                    " exceeds the attainable maximum on market path " + std::to_string(x));
            }
        }
    }

    RandomVariable reached;
    reached.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        reached.values[i] =
            (M.values[i] >= level[static_cast<std::size_t>(space.market_of(i))]) ? 1.0 : 0.0;
    }

    DualMeasure dual;
    dual.alpha = alpha;
    dual.level.assign(level.begin(), level.end());
    dual.density.assign(space.size(), 1.0);

    const int n_times = space.signals().n_times();
    dual.factors.reserve(static_cast<std::size_t>(n_times));
    for (int i = 1; i <= n_times; ++i) {
        const RandomVariable num =
            cond_expectation(space, reached, SigmaField::signal_time(i), Measure::Martingale);
        const RandomVariable den = cond_expectation(
            space, reached, SigmaField::market_at_signal_gap(i), Measure::Martingale);
        std::vector<double> factor(space.size());
        for (std::size_t j = 0; j < space.size(); ++j) {
            if (den.values[j] == 0.0) {
                // The numerator vanishes on the whole atom as well; the
                // neutral factor keeps the product a probability density.
                factor[j] = 1.0;
            } else {
                factor[j] = alpha + (1.0 - alpha) * num.values[j] / den.values[j];
            }
            dual.density[j] *= factor[j];
        }
        dual.factors.push_back(std::move(factor));
    }
    return dual;
}

double verify_martingale(const ScenarioSpace& space, const DualMeasure& dual) {
    if (!(dual.alpha > 0.0)) {
        throw DomainError("martingale check requires alpha > 0 (equivalent measure)");
    }
    if (dual.density.size() != space.size()) {
        throw DomainError("dual measure does not match scenario space");
    }

    const Lattice& lat = space.lattice();
    double worst = 0.0;
    std::vector<int> atom;
    for (int t = 0; t < lat.steps(); ++t) {
        const int n_atoms = space.atom_partition(SigmaField::full_info_at(t), atom);
        std::vector<KahanSum> weighted(static_cast<std::size_t>(n_atoms));
        std::vector<KahanSum> mass(static_cast<std::size_t>(n_atoms));
        std::vector<double> here(static_cast<std::size_t>(n_atoms), 0.0);
        for (std::size_t i = 0; i < space.size(); ++i) {
            const int x = space.market_of(i);
            const double w = space.r(i) * dual.density[i];
            const std::size_t a = static_cast<std::size_t>(atom[i]);
            weighted[a].add(w * lat.path(x).prices[static_cast<std::size_t>(t) + 1]);
            mass[a].add(w);
            here[a] = lat.path(x).prices[static_cast<std::size_t>(t)];
        }
        for (int a = 0; a < n_atoms; ++a) {
            const double m = mass[static_cast<std::size_t>(a)].value();
            if (m <= 0.0) {
                throw DomainError("information atom carries no mass under the dual measure");
            }
            const double expected = weighted[static_cast<std::size_t>(a)].value() / m;
            worst = std::max(worst, std::fabs(expected - here[static_cast<std::size_t>(a)]));
        }
    }
    return worst;
}

double dual_expectation(const ScenarioSpace& space, const RandomVariable& M,
                        const DualMeasure& dual) {
    if (M.values.size() != space.size() || dual.density.size() != space.size()) {
        throw DomainError("scenario table size mismatch");
    }
    KahanSum sum;
    for (std::size_t i = 0; i < space.size(); ++i) {
        sum.add(space.r(i) * dual.density[i] * M.values[i]);
    }
    return sum.value();
}

double superhedge_price_via_duality(const ScenarioSpace& space, const RandomVariable& M) {
    for (double v : M.values) {
        if (v < 0.0) throw DomainError("superhedge price requires a nonnegative payoff");
    }
    const UpperEnvelope env = upper_envelope(space, M);
    return space.expect_r_market(env.values);
}

} // namespace sfhedge
