#include <doctest.h>

#include <cmath>

#include "sfhedge/numerics.hpp"
#include "sfhedge/rng.hpp"
#include "sfhedge/scenario.hpp"
#include "support/instances.hpp"

using namespace sfhedge;

TEST_CASE("product space: weights, normalization, measure equivalence") {
    const testing::Instance inst = testing::make_ul1();
    const ScenarioSpace& space = inst.space;
    REQUIRE(space.size() == 4);

    // (up, alive): r = (1/3)(0.8)
    const std::size_t up_alive = space.scenario_index(1, 0);
    CHECK(space.r(up_alive) == doctest::Approx((1.0 / 3.0) * 0.8).epsilon(1e-15));
    CHECK(space.p(up_alive) == doctest::Approx(0.5 * 0.8).epsilon(1e-15));

    KahanSum sp, sr;
    for (std::size_t i = 0; i < space.size(); ++i) {
        CHECK(space.p(i) > 0.0);
        CHECK(space.r(i) > 0.0);
        sp.add(space.p(i));
        sr.add(space.r(i));
    }
    CHECK(std::fabs(sp.value() - 1.0) <= 1e-12);
    CHECK(std::fabs(sr.value() - 1.0) <= 1e-12);
}

TEST_CASE("no signals: space is isomorphic to the market paths") {
    LatticeParams m;
    m.steps = 2;
    const ScenarioSpace space = ScenarioSpace::build(Lattice::build(m), SignalModel{});
    CHECK(space.size() == 4);
    CHECK(space.n_signal() == 1);
}

TEST_CASE("signal law given the market path is the same under both measures") {
    SplitMix64 rng(8201);
    for (int trial = 0; trial < 20; ++trial) {
        const testing::Instance inst = testing::make_random_instance(rng);
        const ScenarioSpace& space = inst.space;
        for (int x = 0; x < space.n_market(); ++x) {
            KahanSum px, rx;
            for (int s = 0; s < space.n_signal(); ++s) {
                px.add(space.p(space.scenario_index(x, s)));
                rx.add(space.r(space.scenario_index(x, s)));
            }
            for (int s = 0; s < space.n_signal(); ++s) {
                const double cond_p = space.p(space.scenario_index(x, s)) / px.value();
                const double cond_r = space.r(space.scenario_index(x, s)) / rx.value();
                CHECK(std::fabs(cond_p - cond_r) <= 1e-12);
            }
        }
    }
}

TEST_CASE("conditional expectations: constants, independence, finest field") {
    const testing::Instance inst = testing::make_ul1();
    const ScenarioSpace& space = inst.space;

    const RandomVariable c = RandomVariable::constant(space.size(), 3.25);
    for (SigmaField field : {SigmaField::trivial(), SigmaField::market_terminal(),
                             SigmaField::signal_time(1), SigmaField::full()}) {
        const RandomVariable out = cond_expectation(space, c, field);
        for (double v : out.values) CHECK(v == doctest::Approx(3.25).epsilon(1e-15));
    }

    // alive indicator is independent of the market path
    RandomVariable alive;
    alive.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        alive.values[i] = (space.signal_of(i) == 0) ? 1.0 : 0.0;
    }
    const RandomVariable cond = cond_expectation(space, alive, SigmaField::market_terminal());
    for (double v : cond.values) CHECK(v == doctest::Approx(0.8).epsilon(1e-14));

    // finest field reproduces the variable
    const RandomVariable same = cond_expectation(space, alive, SigmaField::full());
    for (std::size_t i = 0; i < space.size(); ++i) {
        CHECK(same.values[i] == doctest::Approx(alive.values[i]).epsilon(1e-15));
    }
}

TEST_CASE("tower property on nested fields, likelihood identities") {
    SplitMix64 rng(8202);
    for (int trial = 0; trial < 20; ++trial) {
        const testing::Instance inst = testing::make_random_instance(rng);
        const ScenarioSpace& space = inst.space;

        RandomVariable M;
        M.values.resize(space.size());
        for (double& v : M.values) v = rng.uniform(-50.0, 50.0);

        const int n_times = space.signals().n_times();
        std::vector<std::pair<SigmaField, SigmaField>> nested = {
            {SigmaField::full(), SigmaField::market_terminal()},
            {SigmaField::full(), SigmaField::trivial()},
            {SigmaField::market_terminal(), SigmaField::trivial()},
        };
        for (int i = 1; i <= n_times; ++i) {
            nested.push_back({SigmaField::full(), SigmaField::signal_time(i)});
            nested.push_back({SigmaField::signal_time(i), SigmaField::market_at_signal_gap(i)});
            if (i > 1) {
                nested.push_back({SigmaField::market_at_signal_gap(i), SigmaField::signal_time(i - 1)});
                nested.push_back({SigmaField::signal_time(i), SigmaField::signal_time(i - 1)});
            }
        }
        for (const auto& [fine, coarse] : nested) {
            const RandomVariable through =
                cond_expectation(space, cond_expectation(space, M, fine), coarse);
            const RandomVariable direct = cond_expectation(space, M, coarse);
            for (std::size_t i = 0; i < space.size(); ++i) {
                CHECK(std::fabs(through.values[i] - direct.values[i]) <= 1e-12);
            }
        }

        // dP/dR * dR/dP = 1 scenario-wise, and the change of measure moves
        // expectations across correctly.
        RandomVariable weighted;
        weighted.values.resize(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
            const double lik = space.likelihood_p_over_r(i);
            CHECK(std::fabs(lik * (1.0 / lik) - 1.0) <= 1e-15);
            weighted.values[i] = lik * std::fabs(M.values[i]);
        }
        RandomVariable abs_m;
        abs_m.values.resize(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) abs_m.values[i] = std::fabs(M.values[i]);
        CHECK(std::fabs(space.expect_r(weighted.values) - space.expect_p(abs_m.values)) <= 1e-12);
    }
}

TEST_CASE("capacity cap on the joint space") {
    LatticeParams m;
    m.steps = 3;
    CHECK_THROWS_AS((void)ScenarioSpace::build(Lattice::build(m), mortality_model(2, {0.1, 0.1}),
                                               /*scenario_cap=*/10),
                    CapacityError);
}

TEST_CASE("signal times beyond the tree are rejected") {
    LatticeParams m;
    m.steps = 1;
    CHECK_THROWS_AS((void)ScenarioSpace::build(Lattice::build(m), mortality_model(2, {0.1, 0.1})),
                    DomainError);
}
