// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "coboson/io.hpp"
#include "test_util.hpp"

using namespace coboson;
using Catch::Approx;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("distribution json round trip") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        const auto dist = test::random_distribution(rng, 32);
        const auto back = distribution_from_json(distribution_to_json(dist));
        REQUIRE(back.d() == dist.d());
        for (std::int64_t j = 0; j < dist.d(); ++j)
            REQUIRE(back.lambda(j) == dist.lambda(j));  // bit-exact (shortest round trip)
        REQUIRE(back.tail_mass() == dist.tail_mass());
        REQUIRE(back.family().kind == dist.family().kind);
    }

    // family tags survive, including the parameter
    const auto g = SchmidtDistribution::geometric(0.55, 40);
    const auto g2 = distribution_from_json(distribution_to_json(g));
    CHECK(g2.family().kind == FamilyKind::Geometric);
    CHECK(g2.family().param == 0.55);

    const auto path = temp_file("coboson_roundtrip.json");
    write_distribution(g, path.string());
    const auto g3 = read_distribution(path.string());
    CHECK(g3.lambda(0) == g.lambda(0));
    std::filesystem::remove(path);
}

TEST_CASE("reader rejects invariant violations") {
    using nlohmann::json;
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"lambdas": []})")), FormatError);
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"lambdas": [0.4, 0.6]})")),
                    FormatError);  // not sorted
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"lambdas": [0.9, -0.1]})")),
                    FormatError);  // negative
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"lambdas": [0.5, 0.2]})")),
                    FormatError);  // does not sum to 1
    CHECK_THROWS_AS(
        distribution_from_json(json::parse(R"({"lambdas": [0.5, 0.5], "tail_mass": 0.2})")),
        FormatError);  // sum + tail != 1
    CHECK_THROWS_AS(
        distribution_from_json(json::parse(R"({"lambdas": [1.0], "family": "exotic"})")),
        FormatError);  // unknown family tag
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"([1, 2, 3])")), FormatError);
    CHECK_NOTHROW(
        distribution_from_json(json::parse(R"({"lambdas": [1.0], "family": null})")));
}

TEST_CASE("quality serialization schema") {
    const auto g = SchmidtDistribution::geometric(0.7, 100);
    const auto chi = elementary_symmetric(g, 5);
    const auto q = make_quality_report(g, chi, 3);

    const auto j = quality_to_json(q, g.family().to_string());
    for (const char* key : {"n", "f_ratio", "alpha", "eps_norm", "departure", "number_exp",
                            "lower_bound", "upper_bound", "series_approx", "family"})
        REQUIRE(j.contains(key));
    CHECK(j["n"] == 3);
    CHECK(j["family"] == "geometric(0.7)");

    const auto row = quality_to_csv_row(q);
    CHECK(row.rfind("3,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 7);  // 8 columns
}

TEST_CASE("verdict serialization") {
    MajorizationVerdict v;
    v.outcome = MajorizationVerdict::Outcome::Violated;
    v.violation_index = 1;
    v.gap = 2.5e-7;
    v.checked_prefixes = 1;
    auto j = verdict_to_json(v, 1000, 1e-12);
    CHECK(j["outcome"] == "Violated");
    CHECK(j["violation_index"] == 1);
    CHECK(j["gap"] == 2.5e-7);
    CHECK(j["truncation_d"] == 1000);
    CHECK(j["tolerance"] == 1e-12);

    MajorizationVerdict m;
    m.outcome = MajorizationVerdict::Outcome::Majorized;
    m.checked_prefixes = 123456;
    auto jm = verdict_to_json(m, 50, 1e-12);
    CHECK(jm["violation_index"].is_null());
    CHECK(jm["gap"].is_null());
    CHECK(jm["checked_prefixes"] == 123456);
}

TEST_CASE("float formatting round trips and is shortest") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(2.5e-7) == "2.5e-07");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const double x = std::ldexp(u(rng), t % 600 - 300);
        CHECK(std::stod(format_double(x)) == x);
    }
}
