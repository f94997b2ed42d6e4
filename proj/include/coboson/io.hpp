// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coboson/errors.hpp"
#include "coboson/majorization.hpp"
#include "coboson/numeric.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/symfun.hpp"

namespace coboson {

namespace detail {

inline std::optional<Family> parse_family(const std::string& s) {
    if (s == "uniform") return Family{FamilyKind::Uniform, 0.0};
    if (s == "custom") return Family{FamilyKind::Custom, 0.0};
    for (auto [name, kind] : {std::pair{std::string("geometric("), FamilyKind::Geometric},
                              std::pair{std::string("zeta("), FamilyKind::Zeta}}) {
        if (s.rfind(name, 0) == 0 && s.back() == ')') {
            const std::string num = s.substr(name.size(), s.size() - name.size() - 1);
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(num, &used);
            } catch (const std::exception&) {
                return std::nullopt;
            }
            if (used != num.size()) return std::nullopt;
            return Family{kind, v};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// {"lambdas": [...], "tail_mass": x, "family": "geometric(0.5)"|null}
[[nodiscard]] inline nlohmann::json distribution_to_json(const SchmidtDistribution& dist) {
    nlohmann::json j;
    j["lambdas"] = std::vector<double>(dist.lambdas().begin(), dist.lambdas().end());
    j["tail_mass"] = dist.tail_mass();
    if (dist.family().kind == FamilyKind::Custom) {
        j["family"] = nullptr;
    } else {
        j["family"] = dist.family().to_string();
    }
    return j;
}

/// Parses and validates a distribution object; rejects anything that
/// breaks the ordering/positivity/normalization invariants.
[[nodiscard]] inline SchmidtDistribution distribution_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("distribution: expected a JSON object");
    if (!j.contains("lambdas") || !j["lambdas"].is_array())
        throw FormatError("distribution: missing \"lambdas\" array");
    std::vector<double> lam;
    for (const auto& x : j["lambdas"]) {
        if (!x.is_number()) throw FormatError("distribution: lambdas must be numbers");
        lam.push_back(x.get<double>());
    }
    double tail = 0.0;
    if (j.contains("tail_mass")) {
        if (!j["tail_mass"].is_number())
            throw FormatError("distribution: tail_mass must be a number");
        tail = j["tail_mass"].get<double>();
    }
    Family family{FamilyKind::Custom, 0.0};
    if (j.contains("family") && !j["family"].is_null()) {
        if (!j["family"].is_string())
            throw FormatError("distribution: family must be a string or null");
        auto parsed = detail::parse_family(j["family"].get<std::string>());
        if (!parsed)
            throw FormatError("distribution: unrecognized family \"" +
                              j["family"].get<std::string>() + "\"");
        family = *parsed;
    }
    try {
        return SchmidtDistribution::from_parts(std::move(lam), tail, family);
    } catch (const DomainError& e) {
        throw FormatError(std::string("distribution: ") + e.what());
    }
}

inline void write_distribution(const SchmidtDistribution& dist, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open for writing: " + path);
    out << distribution_to_json(dist).dump(2) << '\n';
}

[[nodiscard]] inline SchmidtDistribution read_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open distribution file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("distribution: invalid JSON: ") + e.what());
    }
    return distribution_from_json(j);
}

[[nodiscard]] inline nlohmann::json quality_to_json(const QualityReport& q,
                                                    const std::string& family) {
    nlohmann::json j;
    j["n"] = q.n;
    j["f_ratio"] = q.f_ratio;
    j["alpha"] = q.alpha;
    j["eps_norm"] = q.eps_norm;
    j["departure"] = q.departure;
    j["number_exp"] = q.number_exp;
    j["lower_bound"] = q.lower_bound;
    j["upper_bound"] = q.upper_bound;
    j["series_approx"] = q.series_approx;
    j["family"] = family;
    return j;
}

inline constexpr const char* kQualityCsvHeader =
    "n,f_ratio,lower,upper,series,eps_norm,departure,number_exp";

[[nodiscard]] inline std::string quality_to_csv_row(const QualityReport& q) {
    std::ostringstream os;
    os << q.n << ',' << format_double(q.f_ratio) << ',' << format_double(q.lower_bound) << ','
       << format_double(q.upper_bound) << ',' << format_double(q.series_approx) << ','
       << format_double(q.eps_norm) << ',' << format_double(q.departure) << ','
       << format_double(q.number_exp);
    return os.str();
}

[[nodiscard]] inline nlohmann::json verdict_to_json(const MajorizationVerdict& v,
                                                    std::int64_t truncation_d, double tol) {
    nlohmann::json j;
    j["outcome"] = v.outcome_name();
    j["violation_index"] =
        v.violation_index ? nlohmann::json(*v.violation_index) : nlohmann::json(nullptr);
    j["gap"] = v.gap ? nlohmann::json(*v.gap) : nlohmann::json(nullptr);
    if (v.checked_prefixes < 9e15 && v.checked_prefixes == std::floor(v.checked_prefixes)) {
        j["checked_prefixes"] = static_cast<std::uint64_t>(v.checked_prefixes);
    } else {
        j["checked_prefixes"] = v.checked_prefixes;
    }
    j["truncation_d"] = truncation_d;
    j["tolerance"] = tol;
    return j;
}

inline constexpr const char* kProofCsvHeader = "l,g_i,g_f,prefix_i,prefix_f,margin";

[[nodiscard]] inline std::string proof_row_to_csv(const PrefixProofRow& r) {
    std::ostringstream os;
    os << r.level << ',' << r.deg_initial << ',' << r.deg_final << ','
       << format_double(r.prefix_initial) << ',' << format_double(r.prefix_final) << ','
       << format_double(r.margin);
    return os.str();
}

}  // namespace coboson
