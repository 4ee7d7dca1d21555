#include <doctest.h>

#include <cmath>
#include <vector>

#include "sfhedge/lattice.hpp"
#include "sfhedge/numerics.hpp"
#include "sfhedge/rng.hpp"
#include "support/instances.hpp"

using namespace sfhedge;

namespace {
LatticeParams ul1_params() {
    LatticeParams m;
    m.s0 = 100.0;
    m.u = 2.0;
    m.d = 0.5;
    m.rho = 0.0;
    m.steps = 1;
    m.p_up = 0.5;
    return m;
}
} // namespace

TEST_CASE("one-period lattice: risk-neutral probability and path weights") {
    const Lattice lat = Lattice::build(ul1_params());
    CHECK(lat.q() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    REQUIRE(lat.n_paths() == 2);
    // id 1 = up, id 0 = down
    CHECK(lat.path(1).p == doctest::Approx(0.5));
    CHECK(lat.path(1).r == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(lat.path(0).p == doctest::Approx(0.5));
    CHECK(lat.path(0).r == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(lat.path(1).prices.back() == doctest::Approx(200.0));
    CHECK(lat.path(0).prices.back() == doctest::Approx(50.0));
}

TEST_CASE("two-period lattice: four paths, probabilities normalized") {
    LatticeParams m = ul1_params();
    m.steps = 2;
    const Lattice lat = Lattice::build(m);
    REQUIRE(lat.n_paths() == 4);
    KahanSum sp, sr;
    for (const MarketPath& x : lat.paths()) {
        sp.add(x.p);
        sr.add(x.r);
    }
    CHECK(std::fabs(sp.value() - 1.0) <= 1e-12);
    CHECK(std::fabs(sr.value() - 1.0) <= 1e-12);
}

TEST_CASE("lattice rejects bad parameters") {
    LatticeParams m = ul1_params();
    m.u = 1.1;
    m.d = 1.05;
    CHECK_THROWS_AS((void)Lattice::build(m), ArbitrageError);

    m = ul1_params();
    m.p_up = 1.0;
    CHECK_THROWS_AS((void)Lattice::build(m), DomainError);

    m = ul1_params();
    m.s0 = -5.0;
    CHECK_THROWS_AS((void)Lattice::build(m), DomainError);

    m = ul1_params();
    m.steps = 30;
    CHECK_THROWS_AS((void)Lattice::build(m), CapacityError);
}

TEST_CASE("pricing: unit payoff, martingale property, call value") {
    const Lattice lat = Lattice::build(ul1_params());
    CHECK(price(lat, std::vector<double>{1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> terminal(2);
    for (const MarketPath& x : lat.paths()) terminal[static_cast<std::size_t>(x.id)] = x.prices.back();
    CHECK(price(lat, terminal) == doctest::Approx(100.0).epsilon(1e-14));

    // discounted (S_T - 100)^+ : 100 on up, 0 on down
    CHECK(price(lat, std::vector<double>{0.0, 100.0}) ==
          doctest::Approx(100.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)price(lat, std::vector<double>{-1.0, 0.0}), DomainError);
}

TEST_CASE("pricing is linear") {
    SplitMix64 rng(7001);
    LatticeParams m = ul1_params();
    m.steps = 4;
    const Lattice lat = Lattice::build(m);
    std::vector<double> h1(16), h2(16), sum(16);
    for (int i = 0; i < 16; ++i) {
        h1[static_cast<std::size_t>(i)] = rng.uniform(0.0, 50.0);
        h2[static_cast<std::size_t>(i)] = rng.uniform(0.0, 50.0);
        sum[static_cast<std::size_t>(i)] =
            h1[static_cast<std::size_t>(i)] + h2[static_cast<std::size_t>(i)];
    }
    CHECK(std::fabs(price(lat, sum) - price(lat, h1) - price(lat, h2)) <= 1e-12);
}

TEST_CASE("replication: hand-solved one-period claim") {
    const Lattice lat = Lattice::build(ul1_params());
    const Strategy s = replicate(lat, std::vector<double>{0.0, 60.0});
    CHECK(s.v0 == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(s.positions[0][0] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("replication: constant claim and buy-and-hold") {
    LatticeParams m = ul1_params();
    m.steps = 3;
    const Lattice lat = Lattice::build(m);

    std::vector<double> constant(8, 7.5);
    const Strategy sc = replicate(lat, constant);
    CHECK(sc.v0 == doctest::Approx(7.5).epsilon(1e-15));
    for (const auto& level : sc.positions) {
        for (double xi : level) CHECK(std::fabs(xi) <= 1e-15);
    }

    std::vector<double> asset(8);
    for (const MarketPath& x : lat.paths()) asset[static_cast<std::size_t>(x.id)] = x.prices.back();
    const Strategy sa = replicate(lat, asset);
    CHECK(sa.v0 == doctest::Approx(100.0).epsilon(1e-14));
    for (const auto& level : sa.positions) {
        for (double xi : level) CHECK(xi == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("replication exactness, self-financing and backward consistency on random claims") {
    SplitMix64 rng(7002);
    for (int trial = 0; trial < 25; ++trial) {
        const LatticeParams m = testing::random_market(rng, 5);
        const Lattice lat = Lattice::build(m);
        std::vector<double> h(static_cast<std::size_t>(lat.n_paths()));
        double h_max = 0.0;
        for (double& v : h) {
            v = rng.uniform(0.0, 100.0);
            h_max = std::max(h_max, v);
        }
        const Strategy strat = replicate(lat, h);

        // forward-propagate the self-financing identity and compare at T
        const int n = lat.steps();
        double worst_sf = 0.0;
        for (const MarketPath& x : lat.paths()) {
            double v = strat.v0;
            const std::uint32_t bits = static_cast<std::uint32_t>(x.id);
            for (int t = 0; t < n; ++t) {
                const double xi = strat.positions[static_cast<std::size_t>(t)][bits & ((1u << t) - 1u)];
                v += xi * (x.prices[static_cast<std::size_t>(t) + 1] -
                           x.prices[static_cast<std::size_t>(t)]);
                const double stored =
                    strat.values[static_cast<std::size_t>(t) + 1][bits & ((1u << (t + 1)) - 1u)];
                worst_sf = std::max(worst_sf, std::fabs(v - stored) / std::max(1.0, std::fabs(stored)));
            }
            CHECK(std::fabs(v - h[static_cast<std::size_t>(x.id)]) <= 1e-9 * std::max(1.0, h_max));
        }
        CHECK(worst_sf <= 1e-12);

        // node values are conditional expectations of the terminal claim:
        // check the root against the price
        CHECK(std::fabs(strat.v0 - price(lat, h)) <= 1e-12 * std::max(1.0, h_max));

        // admissibility for nonnegative claims
        for (const auto& level : strat.values) {
            for (double v : level) CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("node values match risk-neutral conditional expectations at every node") {
    SplitMix64 rng(7003);
    LatticeParams m = testing::random_market(rng, 4);
    m.steps = 4;
    const Lattice lat = Lattice::build(m);
    std::vector<double> h(16);
    for (double& v : h) v = rng.uniform(0.0, 100.0);
    const Strategy strat = replicate(lat, h);

    for (int t = 0; t <= 4; ++t) {
        const std::uint32_t mask = (1u << t) - 1u;
        std::vector<KahanSum> num(std::size_t{1} << t), den(std::size_t{1} << t);
        for (const MarketPath& x : lat.paths()) {
            const std::uint32_t prefix = static_cast<std::uint32_t>(x.id) & mask;
            num[prefix].add(x.r * h[static_cast<std::size_t>(x.id)]);
            den[prefix].add(x.r);
        }
        for (std::uint32_t prefix = 0; prefix < (1u << t); ++prefix) {
            const double expected = num[prefix].value() / den[prefix].value();
            CHECK(std::fabs(strat.values[static_cast<std::size_t>(t)][prefix] - expected) <=
                  1e-10);
        }
    }
}
