// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

#include "coboson/fock.hpp"
#include "coboson/symfun.hpp"
#include "test_util.hpp"

using namespace coboson;
using Catch::Approx;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const SparseOperator& op) {
    Dense m(static_cast<std::size_t>(op.dim),
            std::vector<double>(static_cast<std::size_t>(op.dim), 0.0));
    for (const auto& e : op.entries) m[e.row][e.col] += e.amp;
    return m;
}

Dense mul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size();
    Dense c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST_CASE("pauli exclusion and basic matrix elements") {
    const auto single = SchmidtDistribution::uniform(1);
    FockSpace fs(1, FockSpace::Basis::Full);
    const auto cdag = fs.coboson_creation(single);
    auto v = cdag.apply(fs.vacuum());
    // c^dag |0,0> = |1,1>: index mask_A=1, mask_B=1 -> 1 | 1<<1 = 3
    CHECK(v[3] == Approx(1.0));
    CHECK(dot(v, v) == Approx(1.0));
    auto v2 = cdag.apply(v);
    CHECK(dot(v2, v2) == Approx(0.0).margin(1e-30));  // c^dag^2 |0> = 0 at d=1

    const auto d2 = SchmidtDistribution::from_weights(std::vector<double>{0.6, 0.4});
    FockSpace fs2(2, FockSpace::Basis::Full);
    const auto c2 = fs2.coboson_creation(d2);
    const auto a2 = fs2.coboson_annihilation(d2);
    auto psi = c2.apply(fs2.vacuum());
    CHECK(dot(psi, psi) == Approx(1.0).epsilon(1e-14));  // <0| c c^dag |0> = 1
    auto back = a2.apply(psi);
    CHECK(back[0] == Approx(1.0).epsilon(1e-14));  // c|1> = |0>
    auto psi2 = c2.apply(psi);
    CHECK(dot(psi2, psi2) == Approx(0.96).epsilon(1e-13));  // 2! chi_2 = 2*0.48
}

TEST_CASE("anticommutation relations, exhaustive for d <= 4") {
    for (std::int64_t d : {2, 3, 4}) {
        for (auto ord : {ModeOrdering::AB, ModeOrdering::BA}) {
            FockSpace fs(d, FockSpace::Basis::Full, ord);
            const auto dim = static_cast<std::size_t>(fs.dimension());
            using Sp = FockSpace::Species;
            for (Sp x : {Sp::A, Sp::B}) {
                for (Sp y : {Sp::A, Sp::B}) {
                    for (std::int64_t m = 0; m < d; ++m) {
                        for (std::int64_t n = 0; n < d; ++n) {
                            const auto xm = to_dense(fs.annihilation(x, m));
                            const auto ydn = to_dense(fs.creation(y, n));
                            const auto anti = [&] {
                                auto ab = mul(xm, ydn);
                                const auto ba = mul(ydn, xm);
                                for (std::size_t i = 0; i < dim; ++i)
                                    for (std::size_t j = 0; j < dim; ++j) ab[i][j] += ba[i][j];
                                return ab;
                            }();
                            const double expected = (x == y && m == n) ? 1.0 : 0.0;
                            for (std::size_t i = 0; i < dim; ++i)
                                for (std::size_t j = 0; j < dim; ++j) {
                                    const double want = i == j ? expected : 0.0;
                                    REQUIRE(anti[i][j] == Approx(want).margin(1e-14));
                                }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("paired sector agrees with the full space (d <= 4)") {
    std::mt19937_64 rng(140);
    for (int t = 0; t < 25; ++t) {
        const auto dist = test::random_distribution(rng, 4);
        const auto d = dist.d();
        FockSpace full(d, FockSpace::Basis::Full);
        const auto cdag = full.coboson_creation(dist);
        auto v = full.vacuum();
        for (std::int64_t n = 1; n <= d; ++n) {
            v = cdag.apply(v);
            const double chi_full = dot(v, v) / std::exp(log_factorial(n));
            const auto ns = number_state(dist, n);
            CHECK(ns.chi == Approx(chi_full).epsilon(1e-12));
        }
    }
}

TEST_CASE("number states against closed forms") {
    const auto u4 = SchmidtDistribution::uniform(4);
    CHECK(number_state(u4, 2).chi == Approx(0.75).epsilon(1e-13));  // 2! C(4,2)/16

    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        const auto dist = test::random_distribution(rng, 8);
        CHECK(number_state(dist, 1).chi == Approx(dist.power_sum(1)).epsilon(1e-13));
    }

    const auto d2 = SchmidtDistribution::from_weights(std::vector<double>{0.6, 0.4});
    CHECK_THROWS_AS(number_state(d2, 3), PauliBlockedError);
}

TEST_CASE("annihilation decomposition") {
    const auto d2 = SchmidtDistribution::from_weights(std::vector<double>{0.6, 0.4});
    const auto rep = verify_annihilation(d2, 2);
    CHECK(rep.eps_norm == Approx(0.04).margin(1e-13));
    CHECK(rep.orthogonality_residual < 1e-13);

    const auto r1 = verify_annihilation(d2, 1);
    CHECK(r1.eps_norm == Approx(0.0).margin(1e-14));  // c|1> = |0> exactly
    CHECK(r1.alpha == Approx(1.0).epsilon(1e-14));

    const auto u6 = SchmidtDistribution::uniform(6);
    const auto ru = verify_annihilation(u6, 2);
    CHECK(ru.alpha * ru.alpha == Approx(5.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("commutator expectation equals the chi-ratio formula") {
    const auto single = SchmidtDistribution::uniform(1);
    CHECK(commutator_expectation(single, 1) == Approx(2.0).epsilon(1e-14));

    const auto u4 = SchmidtDistribution::uniform(4);
    CHECK(commutator_expectation(u4, 1) == Approx(0.5).epsilon(1e-13));

    const auto d2 = SchmidtDistribution::from_weights(std::vector<double>{0.6, 0.4});
    CHECK(commutator_expectation(d2, 2) == Approx(2.0).epsilon(1e-13));  // chi_3 = 0

    std::mt19937_64 rng(220);
    for (int t = 0; t < 40; ++t) {
        const auto dist = test::random_distribution(rng, 6);
        const std::int64_t top = std::min<std::int64_t>(dist.d(), 3);
        const auto chi = elementary_symmetric(dist, top + 1);
        for (std::int64_t n = 1; n <= top; ++n)
            CHECK(commutator_expectation(dist, n) ==
                  Approx(departure_expectation(chi, n)).margin(1e-12));
    }
}

TEST_CASE("scalars invariant under the fermionic ordering convention") {
    std::mt19937_64 rng(333);
    for (int t = 0; t < 20; ++t) {
        const auto dist = test::random_distribution(rng, 5);
        const std::int64_t top = std::min<std::int64_t>(dist.d(), 3);
        for (std::int64_t n = 1; n <= top; ++n) {
            CHECK(number_state(dist, n, ModeOrdering::AB).chi ==
                  Approx(number_state(dist, n, ModeOrdering::BA).chi).epsilon(1e-14));
            const auto a = verify_annihilation(dist, n, ModeOrdering::AB);
            const auto b = verify_annihilation(dist, n, ModeOrdering::BA);
            CHECK(a.eps_norm == Approx(b.eps_norm).margin(1e-13));
            CHECK(a.alpha == Approx(b.alpha).margin(1e-13));
            CHECK(commutator_expectation(dist, n, ModeOrdering::AB) ==
                  Approx(commutator_expectation(dist, n, ModeOrdering::BA)).margin(1e-13));
        }
    }
}

TEST_CASE("exact rational oracle anchors the floating-point values") {
    using test::Rational;
    // lambda = {2/5, 3/10, 1/5, 1/10}
    const std::vector<Rational> lam{{2, 5}, {3, 10}, {1, 5}, {1, 10}};
    PairedSectorOracle<Rational> exact(lam);

    // chi_2 = 2! e_2 exactly, with e_2 the sum of pairwise products
    Rational e2(0);
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j) e2 += lam[i] * lam[j];
    CHECK(exact.chi(2) == Rational(2) * e2);
    CHECK(e2 == Rational(7, 20));
    CHECK(exact.chi(2) == Rational(7, 10));

    // chi_4 = 4! * product of all four
    CHECK(exact.chi(4) == Rational(24) * Rational(2 * 3 * 1 * 1, 5 * 10 * 5 * 10));

    // <v_{n-1}, c v_n> = ||v_n||^2 exactly (the alpha_N identity)
    const auto v1 = exact.raw_number_state(1);
    const auto v2 = exact.apply_creation(v1);
    CHECK(exact.inner(v1, exact.apply_annihilation(v2)) == exact.norm2(v2));

    // double route sits within a few ulps of the exact value
    std::vector<double> lam_d;
    for (const auto& r : lam) lam_d.push_back(r.to_double());
    const auto dist = SchmidtDistribution::from_weights(lam_d);
    const auto chi = elementary_symmetric(dist, 4);
    CHECK(chi.chi_tilde(2).value() == Approx(e2.to_double()).epsilon(1e-14));
    CHECK(number_state(dist, 2).chi == Approx(exact.chi(2).to_double()).epsilon(1e-14));
}

TEST_CASE("resource guards") {
    CHECK_THROWS_AS(FockSpace(8, FockSpace::Basis::Full), ResourceError);
    CHECK_THROWS_AS(FockSpace(13, FockSpace::Basis::Paired), ResourceError);
    CHECK_THROWS_AS(PairedSectorOracle<double>(std::vector<double>(13, 1.0 / 13)),
                    ResourceError);
}
