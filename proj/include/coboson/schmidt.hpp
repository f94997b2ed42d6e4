// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/numeric.hpp"
#include "coboson/zeta.hpp"

namespace coboson {

enum class FamilyKind { Custom, Geometric, Zeta, Uniform };

/// Closed-form family descriptor; param is z for Geometric, s for Zeta,
/// unused otherwise.
struct Family {
    FamilyKind kind = FamilyKind::Custom;
    double param = 0.0;

    [[nodiscard]] std::string to_string() const {
        switch (kind) {
            case FamilyKind::Geometric: return "geometric(" + format_double(param) + ")";
            case FamilyKind::Zeta: return "zeta(" + format_double(param) + ")";
            case FamilyKind::Uniform: return "uniform";
            case FamilyKind::Custom: return "custom";
        }
        return "custom";
    }
};

/// Schmidt-coefficient distribution of a single coboson: the occupation
/// probabilities lambda_0 >= lambda_1 >= ... > 0 of the paired modes.
///
/// Infinite-support families are truncated at a cutoff d and the removed
/// probability is tracked in tail_mass instead of being renormalized, so
/// comparisons against d -> infinity closed forms stay honest. Entries
/// that round to zero (or denormal) are dropped at construction.
///
/// Instances are immutable; all member functions are const and safe for
/// concurrent reads.
class SchmidtDistribution {
public:
    /// lambda_j = (1-z) z^j for j < d; tail_mass = z^d.
    static SchmidtDistribution geometric(double z, std::int64_t d) {
        if (!(z > 0.0 && z < 1.0)) throw DomainError("geometric: z must lie in (0,1)");
        if (d < 1) throw DomainError("geometric: d must be positive");
        std::vector<double> lam(static_cast<std::size_t>(d));
        double p = 1.0 - z;
        for (auto& x : lam) {
            x = p;
            p *= z;
        }
        // z^d, evaluated as a power rather than the leftover product
        const double tail = std::exp(static_cast<double>(d) * std::log(z));
        return SchmidtDistribution(std::move(lam), tail, {FamilyKind::Geometric, z});
    }

    /// lambda_j = (j+1)^{-s} / zeta(s) for j < d.
    static SchmidtDistribution zeta(double s, std::int64_t d) {
        if (!(s > 1.0)) throw DomainError("zeta: s must exceed 1 for convergence");
        if (d < 1) throw DomainError("zeta: d must be positive");
        const double zs = riemann_zeta(s);
        std::vector<double> lam(static_cast<std::size_t>(d));
        for (std::int64_t j = 0; j < d; ++j) {
            lam[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j + 1), -s) / zs;
        }
        const double tail = zeta_tail_sum(s, d) / zs;
        return SchmidtDistribution(std::move(lam), tail, {FamilyKind::Zeta, s});
    }

    /// lambda_j = 1/d for j < d.
    static SchmidtDistribution uniform(std::int64_t d) {
        if (d < 1) throw DomainError("uniform: d must be positive");
        std::vector<double> lam(static_cast<std::size_t>(d), 1.0 / static_cast<double>(d));
        return SchmidtDistribution(std::move(lam), 0.0, {FamilyKind::Uniform, 0.0});
    }

    /// Normalizes arbitrary non-negative weights: zeros dropped, sorted
    /// non-increasing (stable, so ties keep their input order), sum 1.
    static SchmidtDistribution from_weights(std::span<const double> raw) {
        std::vector<double> w;
        w.reserve(raw.size());
        NeumaierSum total;
        for (double x : raw) {
            if (!std::isfinite(x) || x < 0.0)
                throw DomainError("from_weights: weights must be finite and non-negative");
            if (x >= std::numeric_limits<double>::min()) {
                w.push_back(x);
                total.add(x);
            }
        }
        if (w.empty()) throw DomainError("from_weights: no positive weight");
        const double norm = total.value();
        for (double& x : w) x /= norm;
        std::stable_sort(w.begin(), w.end(), std::greater<>());
        return SchmidtDistribution(std::move(w), 0.0, {FamilyKind::Custom, 0.0});
    }

    /// Already-validated parts (file reader, renormalization helpers).
    static SchmidtDistribution from_parts(std::vector<double> lambdas, double tail_mass,
                                          Family family) {
        return SchmidtDistribution(std::move(lambdas), tail_mass, family);
    }

    [[nodiscard]] std::span<const double> lambdas() const { return lambdas_; }
    [[nodiscard]] double lambda(std::int64_t j) const {
        return lambdas_[static_cast<std::size_t>(j)];
    }
    [[nodiscard]] std::int64_t d() const { return static_cast<std::int64_t>(lambdas_.size()); }
    [[nodiscard]] double tail_mass() const { return tail_mass_; }
    [[nodiscard]] const Family& family() const { return family_; }

    /// P = sum lambda_j^2 over retained modes.
    [[nodiscard]] double purity() const { return power_sum(2); }

    /// P_j = sum_m lambda_m^j over retained modes; P_1 = 1 - tail_mass.
    [[nodiscard]] double power_sum(std::int64_t j) const {
        if (j < 1) throw DomainError("power_sum: order must be >= 1");
        NeumaierSum s;
        if (j == 1) {
            for (double x : lambdas_) s.add(x);
        } else if (j == 2) {
            for (double x : lambdas_) s.add(x * x);
        } else {
            for (double x : lambdas_) s.add(std::pow(x, static_cast<double>(j)));
        }
        return s.value();
    }

    /// d -> infinity purity of the underlying family, when one exists:
    /// (1-z)/(1+z) for geometric, zeta(2s)/zeta(s)^2 for the zeta family,
    /// 1/d for uniform.
    [[nodiscard]] std::optional<double> purity_closed_form() const {
        switch (family_.kind) {
            case FamilyKind::Geometric:
                return (1.0 - family_.param) / (1.0 + family_.param);
            case FamilyKind::Zeta: {
                const double zs = riemann_zeta(family_.param);
                return riemann_zeta(2.0 * family_.param) / (zs * zs);
            }
            case FamilyKind::Uniform:
                return 1.0 / static_cast<double>(d());
            case FamilyKind::Custom:
                return std::nullopt;
        }
        return std::nullopt;
    }

    /// Shannon entropy -sum lambda ln lambda over retained modes (nats).
    /// The tail contribution is not estimated; callers see tail_mass().
    [[nodiscard]] double entropy() const {
        NeumaierSum s;
        for (double x : lambdas_) s.add(-x * std::log(x));
        return s.value();
    }

    /// Tail folded back in: lambdas rescaled to sum exactly 1. The
    /// family tag is demoted to custom because the rescaled values no
    /// longer satisfy the family's closed forms (or its analytic
    /// spectrum structure) exactly.
    [[nodiscard]] SchmidtDistribution renormalized() const {
        if (tail_mass_ == 0.0) return *this;
        std::vector<double> lam(lambdas_);
        const double norm = power_sum(1);
        for (double& x : lam) x /= norm;
        return SchmidtDistribution(std::move(lam), 0.0, {FamilyKind::Custom, 0.0});
    }

private:
    SchmidtDistribution(std::vector<double> lambdas, double tail_mass, Family family)
        : lambdas_(std::move(lambdas)), tail_mass_(tail_mass), family_(family) {
        validate();
    }

    void validate() const {
        if (lambdas_.empty()) throw DomainError("distribution has no retained modes");
        if (!(tail_mass_ >= 0.0 && tail_mass_ < 1.0))
            throw DomainError("tail_mass must lie in [0,1)");
        double prev = std::numeric_limits<double>::infinity();
        NeumaierSum s;
        for (double x : lambdas_) {
            if (!std::isfinite(x) || x < std::numeric_limits<double>::min())
                throw DomainError("lambdas must be strictly positive");
            if (x > prev) throw DomainError("lambdas must be non-increasing");
            prev = x;
            s.add(x);
        }
        if (std::abs(s.value() + tail_mass_ - 1.0) > 1e-12)
            throw DomainError("lambdas + tail_mass must sum to 1 within 1e-12");
    }

    std::vector<double> lambdas_;
    double tail_mass_ = 0.0;
    Family family_;
};

}  // namespace coboson
