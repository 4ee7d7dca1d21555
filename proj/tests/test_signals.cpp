#include <doctest.h>

#include <cmath>

#include "sfhedge/numerics.hpp"
#include "sfhedge/rng.hpp"
#include "sfhedge/signals.hpp"
#include "support/instances.hpp"

using namespace sfhedge;

TEST_CASE("single-period mortality chain") {
    const SignalModel model = mortality_model(1, {0.2});
    const auto paths = enumerate_signal_paths(model);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].states == std::vector<int>{0});  // alive
    CHECK(paths[0].pi == doctest::Approx(0.8));
    CHECK(paths[1].states == std::vector<int>{1});  // dead
    CHECK(paths[1].pi == doctest::Approx(0.2));
}

TEST_CASE("two-period mortality chain prunes the revival path") {
    const SignalModel model = mortality_model(2, {0.1, 0.1});
    const auto paths = enumerate_signal_paths(model);
    REQUIRE(paths.size() == 3);  // alive-alive, alive-dead, dead-dead
    double alive_at_T = 0.0;
    for (const SignalPath& s : paths) {
        // absorbing: no path revives
        if (s.states[0] == 1) CHECK(s.states[1] == 1);
        if (s.states[1] == 0) alive_at_T += s.pi;
    }
    CHECK(alive_at_T == doctest::Approx(0.81).epsilon(1e-15));
}

TEST_CASE("degenerate chains") {
    const auto certain_alive = enumerate_signal_paths(mortality_model(1, {0.0}));
    REQUIRE(certain_alive.size() == 1);
    CHECK(certain_alive[0].pi == doctest::Approx(1.0));
    CHECK(certain_alive[0].states[0] == 0);

    const auto certain_dead = enumerate_signal_paths(mortality_model(1, {1.0}));
    REQUIRE(certain_dead.size() == 1);
    CHECK(certain_dead[0].states[0] == 1);

    const auto none = enumerate_signal_paths(SignalModel{});
    REQUIRE(none.size() == 1);
    CHECK(none[0].states.empty());
    CHECK(none[0].pi == doctest::Approx(1.0));
}

TEST_CASE("mortality model rejects bad probabilities") {
    CHECK_THROWS_AS((void)mortality_model(1, {1.5}), DomainError);
    CHECK_THROWS_AS((void)mortality_model(1, {-0.1}), DomainError);
    CHECK_THROWS_AS((void)mortality_model_at({2, 1}, {0.1, 0.1}), DomainError);
}

TEST_CASE("enumeration respects the path cap") {
    SignalModel model;
    model.times = {1, 2, 3};
    for (int i = 0; i < 3; ++i) {
        model.state_labels.push_back({"a", "b", "c"});
        std::vector<std::vector<double>> block;
        const int rows = (i == 0) ? 1 : 3;
        for (int r = 0; r < rows; ++r) block.push_back({0.4, 0.3, 0.3});
        model.transitions.push_back(std::move(block));
    }
    CHECK_THROWS_AS((void)enumerate_signal_paths(model, 10), CapacityError);
}

TEST_CASE("random chains: probabilities normalized after pruning") {
    SplitMix64 rng(8101);
    testing::InstanceOptions opts;
    for (int trial = 0; trial < 50; ++trial) {
        const SignalModel model = testing::random_signals(rng, 3, opts);
        const auto paths = enumerate_signal_paths(model);
        KahanSum total;
        for (const SignalPath& s : paths) {
            CHECK(s.pi > 0.0);
            total.add(s.pi);
        }
        CHECK(std::fabs(total.value() - 1.0) <= 1e-12);
    }
}
