// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "coboson/schmidt.hpp"
#include "coboson/zeta.hpp"
#include "test_util.hpp"

using namespace coboson;
using Catch::Approx;

TEST_CASE("geometric family values and tail") {
    const auto g = SchmidtDistribution::geometric(0.5, 4);
    REQUIRE(g.d() == 4);
    CHECK(g.lambda(0) == 0.5);
    CHECK(g.lambda(1) == 0.25);
    CHECK(g.lambda(2) == 0.125);
    CHECK(g.lambda(3) == 0.0625);
    CHECK(g.tail_mass() == Approx(0.0625).epsilon(1e-14));

    const auto single = SchmidtDistribution::geometric(0.5, 1);
    CHECK(single.lambda(0) == 0.5);
    CHECK(single.tail_mass() == Approx(0.5));

    const auto long_tail = SchmidtDistribution::geometric(0.9, 200);
    CHECK(long_tail.tail_mass() == Approx(std::pow(0.9, 200)).epsilon(1e-12));
    CHECK(long_tail.tail_mass() == Approx(7.0551e-10).epsilon(1e-3));

    CHECK_THROWS_AS(SchmidtDistribution::geometric(1.0, 4), DomainError);
    CHECK_THROWS_AS(SchmidtDistribution::geometric(0.0, 4), DomainError);
    CHECK_THROWS_AS(SchmidtDistribution::geometric(0.5, 0), DomainError);
}

TEST_CASE("zeta family values and tail") {
    const auto z1 = SchmidtDistribution::zeta(2.0, 1);
    CHECK(z1.lambda(0) == Approx(0.6079271018540267).epsilon(1e-12));  // 6/pi^2

    const auto z2 = SchmidtDistribution::zeta(2.0, 2);
    CHECK(z2.lambda(1) == Approx(z2.lambda(0) / 4.0).epsilon(1e-14));

    CHECK_THROWS_AS(SchmidtDistribution::zeta(1.0, 10), DomainError);
    CHECK_THROWS_AS(SchmidtDistribution::zeta(0.5, 10), DomainError);
}

TEST_CASE("zeta heavy-tail truncation agrees with the integral bound") {
    const auto dist = SchmidtDistribution::zeta(1.1, 1000000);
    // independent high-precision bracket for zeta(1.1)
    const auto br = test::zeta_bracket(1.1);
    const double zs = 0.5 * (br.lo + br.hi);
    const double integral = std::pow(1e6, -0.1) / 0.1 / zs;
    CHECK(dist.tail_mass() > integral / 2.0);
    CHECK(dist.tail_mass() < integral * 2.0);
    // sum + tail normalizes
    NeumaierSum s;
    for (double x : dist.lambdas()) s.add(x);
    CHECK(s.value() + dist.tail_mass() == Approx(1.0).margin(1e-12));
}

TEST_CASE("uniform family") {
    const auto u = SchmidtDistribution::uniform(4);
    for (std::int64_t j = 0; j < 4; ++j) CHECK(u.lambda(j) == 0.25);
    CHECK(u.tail_mass() == 0.0);
    CHECK(SchmidtDistribution::uniform(1).lambda(0) == 1.0);
    CHECK(SchmidtDistribution::uniform(10).purity() == Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(SchmidtDistribution::uniform(0), DomainError);
}

TEST_CASE("from_weights normalizes, drops zeros, sorts") {
    const auto a = SchmidtDistribution::from_weights(std::vector<double>{3.0, 1.0});
    CHECK(a.lambda(0) == Approx(0.75));
    CHECK(a.lambda(1) == Approx(0.25));

    const auto b = SchmidtDistribution::from_weights(std::vector<double>{1.0, 0.0, 1.0});
    CHECK(b.d() == 2);
    CHECK(b.lambda(0) == Approx(0.5));
    CHECK(b.lambda(1) == Approx(0.5));

    const auto c = SchmidtDistribution::from_weights(std::vector<double>{0.2, 0.5, 0.3});
    CHECK(c.lambda(0) == Approx(0.5));
    CHECK(c.lambda(1) == Approx(0.3));
    CHECK(c.lambda(2) == Approx(0.2));

    CHECK_THROWS_AS(SchmidtDistribution::from_weights(std::vector<double>{0.0, 0.0}),
                    DomainError);
    CHECK_THROWS_AS(SchmidtDistribution::from_weights(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(SchmidtDistribution::from_weights(std::vector<double>{1.0, -0.1}),
                    DomainError);
}

TEST_CASE("purity: closed forms and bounds") {
    const auto g = SchmidtDistribution::geometric(0.5, 120);  // tail ~ 7.5e-37
    CHECK(g.purity() == Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(*g.purity_closed_form() == Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK(SchmidtDistribution::uniform(4).purity() == Approx(0.25).epsilon(1e-14));

    // zeta(2): closed form 2/5 against the truncated tail-aware sum
    const auto z = SchmidtDistribution::zeta(2.0, 200000);
    CHECK(*z.purity_closed_form() == Approx(0.4).epsilon(1e-10));
    CHECK(z.purity() == Approx(0.4).epsilon(1e-4));  // truncation deficit only
}

TEST_CASE("power sums") {
    const auto u = SchmidtDistribution::uniform(4);
    CHECK(u.power_sum(3) == Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(u.power_sum(1) == Approx(1.0).margin(1e-14));

    const auto g = SchmidtDistribution::geometric(0.5, 150);
    CHECK(g.power_sum(2) == Approx(g.purity()));
    CHECK(g.power_sum(2) == Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(u.power_sum(0), DomainError);
}

TEST_CASE("entropy") {
    CHECK(SchmidtDistribution::uniform(4).entropy() == Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(SchmidtDistribution::uniform(1).entropy() == Approx(0.0).margin(1e-15));

    // direct summation oracle for the geometric family
    const double z = 0.5;
    const auto g = SchmidtDistribution::geometric(z, 64);
    long double h = 0.0L;
    for (int j = 0; j < 64; ++j) {
        const long double l = (1.0L - z) * std::pow(static_cast<long double>(z), j);
        h -= l * std::log(l);
    }
    CHECK(g.entropy() == Approx(static_cast<double>(h)).epsilon(1e-12));
}

TEST_CASE("distribution invariants over random inputs") {
    std::mt19937_64 rng(20260809);
    for (int t = 0; t < 200; ++t) {
        const auto dist = test::random_distribution(rng, 64);
        const auto lam = dist.lambdas();
        for (std::size_t j = 0; j + 1 < lam.size(); ++j) REQUIRE(lam[j] >= lam[j + 1]);
        NeumaierSum s;
        for (double x : lam) s.add(x);
        REQUIRE(std::abs(s.value() + dist.tail_mass() - 1.0) <= 1e-12);
        // purity bounded by the largest coefficient
        REQUIRE(dist.purity() <= lam[0] + 1e-15);
    }
}

TEST_CASE("geometric purity converges to (1-z)/(1+z) within twice the tail") {
    for (double z : {0.3, 0.6, 0.9}) {
        for (std::int64_t d : {5, 20, 80}) {
            const auto g = SchmidtDistribution::geometric(z, d);
            const double exact = (1.0 - z) / (1.0 + z);
            CHECK(std::abs(g.purity() - exact) <= 2.0 * g.tail_mass() + 1e-15);
        }
    }
}

TEST_CASE("entropy invariant under permutation of weights") {
    std::mt19937_64 rng(7);
    std::vector<double> w{0.31, 0.07, 0.22, 0.18, 0.12, 0.1};
    const double h0 = SchmidtDistribution::from_weights(w).entropy();
    for (int t = 0; t < 10; ++t) {
        std::shuffle(w.begin(), w.end(), rng);
        CHECK(SchmidtDistribution::from_weights(w).entropy() == Approx(h0).epsilon(1e-13));
    }
}
