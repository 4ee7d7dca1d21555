#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sfhedge/dual.hpp"
#include "sfhedge/rng.hpp"
#include "sfhedge/superhedge.hpp"
#include "support/instances.hpp"

using namespace sfhedge;

TEST_CASE("upper envelope basics") {
    const testing::Instance inst = testing::make_ul1();
    const ScenarioSpace& space = inst.space;

    const UpperEnvelope env = upper_envelope(space, inst.claim.as_rv());
    CHECK(env.values[1] == doctest::Approx(100.0));
    CHECK(env.values[0] == 0.0);

    // market-measurable tables are their own envelope
    RandomVariable market_only;
    market_only.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        market_only.values[i] = 10.0 * (1 + space.market_of(i));
    }
    const UpperEnvelope same = upper_envelope(space, market_only);
    CHECK(same.values[0] == doctest::Approx(10.0));
    CHECK(same.values[1] == doctest::Approx(20.0));
}

TEST_CASE("zero-probability signal outcomes do not enter the envelope") {
    LatticeParams m;
    const ScenarioSpace space =
        ScenarioSpace::build(Lattice::build(m), mortality_model(1, {0.0}));
    // with death probability zero the dead scenario is pruned entirely, so
    // a death-benefit table is identically zero on the remaining space
    REQUIRE(space.n_signal() == 1);
    RandomVariable dead_indicator = RandomVariable::constant(space.size(), 0.0);
    const UpperEnvelope env = upper_envelope(space, dead_indicator);
    for (double v : env.values) CHECK(v == 0.0);
}

TEST_CASE("desk instance: optimal strategy and its evaluation") {
    const testing::Instance inst = testing::make_ul1();
    const SolverResult res = solve_budget(inst.space, inst.claim, 20.0);
    const Strategy strat = build_optimal_strategy(inst.space, inst.claim, res);

    CHECK(strat.v0 == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(strat.positions[0][0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(strat.terminal_values()[1] == doctest::Approx(60.0));
    CHECK(strat.terminal_values()[0] == 0.0);

    const double achieved = evaluate_strategy(inst.space, inst.claim, strat);
    CHECK(achieved == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(std::fabs(achieved - res.success_ratio) <= 1e-12);
}

TEST_CASE("zero strategy scores the zero-payoff mass; full budget superhedges") {
    const testing::Instance inst = testing::make_ul1();

    const SolverResult none = solve_budget(inst.space, inst.claim, 0.0);
    const Strategy zero = build_optimal_strategy(inst.space, inst.claim, none);
    CHECK(zero.v0 == 0.0);
    for (double xi : zero.positions[0]) CHECK(xi == 0.0);
    CHECK(evaluate_strategy(inst.space, inst.claim, zero) ==
          doctest::Approx(0.6).epsilon(1e-12));  // P(D = 0) = 1 - 0.5*0.8

    const SolverResult full = solve_budget(inst.space, inst.claim, inst.superhedge_price);
    const Strategy hedge = build_optimal_strategy(inst.space, inst.claim, full);
    for (std::size_t i = 0; i < inst.space.size(); ++i) {
        CHECK(hedge.terminal_values()[static_cast<std::size_t>(inst.space.market_of(i))] >=
              inst.claim.values[i]);
    }
    CHECK(evaluate_strategy(inst.space, inst.claim, hedge) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("strategy properties on random instances") {
    SplitMix64 rng(9101);
    for (int trial = 0; trial < 40; ++trial) {
        const testing::Instance inst = testing::make_random_instance(rng);
        const SolverResult res = solve_budget(inst.space, inst.claim, inst.budget);
        const Strategy strat = build_optimal_strategy(inst.space, inst.claim, res);

        // never spends more than allowed
        CHECK(strat.v0 <= inst.budget + 1e-12);

        // terminal wealth dominates the covered part of the claim exactly
        for (std::size_t i = 0; i < inst.space.size(); ++i) {
            const double v =
                strat.terminal_values()[static_cast<std::size_t>(inst.space.market_of(i))];
            const double covered = std::min(
                inst.claim.values[i],
                res.gamma.gamma[static_cast<std::size_t>(inst.space.market_of(i))]);
            CHECK(v >= covered);
        }

        // realized ratio equals the solver value
        CHECK(std::fabs(evaluate_strategy(inst.space, inst.claim, strat) -
                        res.success_ratio) <= 1e-12);

        // initial cost agrees with the duality price of the covered claim
        RandomVariable covered;
        covered.values.resize(inst.space.size());
        for (std::size_t i = 0; i < inst.space.size(); ++i) {
            covered.values[i] = std::min(
                inst.claim.values[i],
                res.gamma.gamma[static_cast<std::size_t>(inst.space.market_of(i))]);
        }
        CHECK(std::fabs(strat.v0 - superhedge_price_via_duality(inst.space, covered)) <= 1e-12);
    }
}

TEST_CASE("negative-wealth strategies are rejected at evaluation") {
    const testing::Instance inst = testing::make_ul1();
    Strategy bad = replicate(inst.space.lattice(), std::vector<double>{0.0, 60.0});
    bad.values[1][0] = -0.5;
    CHECK_THROWS_AS((void)evaluate_strategy(inst.space, inst.claim, bad), DomainError);
}

TEST_CASE("strategy csv export shape") {
    const testing::Instance inst = testing::make_ul1();
    const SolverResult res = solve_budget(inst.space, inst.claim, 20.0);
    const Strategy strat = build_optimal_strategy(inst.space, inst.claim, res);
    std::ostringstream out;
    write_strategy_csv(inst.space.lattice(), strat, out);
    const std::string text = out.str();
    CHECK(text.find("step,node_prefix,position,value") == 0);
    CHECK(text.find("\n0,,") != std::string::npos);   // root row
    CHECK(text.find("\n1,u,") != std::string::npos);  // terminal rows
    CHECK(text.find("\n1,d,") != std::string::npos);
}
