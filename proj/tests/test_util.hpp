// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

// Shared test helpers: independent brute-force oracles (kept free of the
// library's computation paths), a small exact rational type, and the
// random-distribution generator.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "coboson/schmidt.hpp"

namespace coboson::test {

/// Exact rational on checked 64-bit words; enough for the d <= 4
/// oracle states with small-denominator inputs.
class Rational {
public:
    Rational() = default;
    Rational(int v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }
    [[nodiscard]] double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(checked(a.num_, b.den_) + checked(b.num_, a.den_),
                        checked(a.den_, b.den_));
    }
    friend Rational operator-(Rational a) { return Rational(-a.num_, a.den_); }
    friend Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(checked(a.num_, b.num_), checked(a.den_, b.den_));
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(checked(a.num_, b.den_), checked(a.den_, b.num_));
    }
    Rational& operator+=(Rational o) { return *this = *this + o; }
    friend bool operator==(Rational a, Rational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    static std::int64_t checked(std::int64_t a, std::int64_t b) {
        std::int64_t r = 0;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("Rational: 64-bit overflow");
        return r;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Brute-force elementary symmetric polynomial e_k by explicit subset
/// enumeration (independent of the DP and Newton routes).
inline double brute_elementary_symmetric(std::span<const double> lam, std::int64_t k) {
    const auto d = static_cast<std::int64_t>(lam.size());
    if (k == 0) return 1.0;
    if (k > d) return 0.0;
    double total = 0.0;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, std::int64_t pos, std::int64_t start, double prod) -> void {
        if (pos == k) {
            total += prod;
            return;
        }
        for (std::int64_t j = start; j <= d - (k - pos); ++j)
            self(self, pos + 1, j + 1, prod * lam[static_cast<std::size_t>(j)]);
    };
    rec(rec, 0, 0, 1.0);
    return total;
}

/// Exhaustive descending initial spectrum (all d^n ordered products).
inline std::vector<double> brute_initial_spectrum(std::span<const double> lam, std::int64_t n) {
    std::vector<double> out;
    const auto d = static_cast<std::int64_t>(lam.size());
    auto rec = [&](auto&& self, std::int64_t pos, double prod) -> void {
        if (pos == n) {
            out.push_back(prod);
            return;
        }
        for (std::int64_t j = 0; j < d; ++j)
            self(self, pos + 1, prod * lam[static_cast<std::size_t>(j)]);
    };
    rec(rec, 0, 1.0);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Exhaustive descending final spectrum (C(d,n) subset products / chi).
inline std::vector<double> brute_final_spectrum(std::span<const double> lam, std::int64_t n) {
    std::vector<double> out;
    const auto d = static_cast<std::int64_t>(lam.size());
    auto rec = [&](auto&& self, std::int64_t pos, std::int64_t start, double prod) -> void {
        if (pos == n) {
            out.push_back(prod);
            return;
        }
        for (std::int64_t j = start; j <= d - (n - pos); ++j)
            self(self, pos + 1, j + 1, prod * lam[static_cast<std::size_t>(j)]);
    };
    rec(rec, 0, 0, 1.0);
    const double chi = std::accumulate(out.begin(), out.end(), 0.0);
    for (auto& x : out) x /= chi;
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Direct prefix-sum majorization test on materialized spectra, with
/// zero padding of the shorter vector.
inline bool brute_majorized(std::vector<double> init, std::vector<double> fin, double tol) {
    fin.resize(std::max(fin.size(), init.size()), 0.0);
    double pi = 0.0, pf = 0.0;
    for (std::size_t k = 0; k < init.size(); ++k) {
        pi += init[k];
        pf += fin[k];
        if (pi - pf > tol) return false;
    }
    return true;
}

/// Bracket [lo, hi] for sum_{k>=1} k^{-s} from a long-double partial sum
/// plus integral bounds; independent of the Euler-Maclaurin route.
struct ZetaBracket {
    double lo;
    double hi;
};

inline ZetaBracket zeta_bracket(double s, std::int64_t terms = 1000000) {
    long double sum = 0.0L;
    for (std::int64_t k = terms; k >= 1; --k)
        sum += std::pow(static_cast<long double>(k), static_cast<long double>(-s));
    const long double m = static_cast<long double>(terms);
    const long double integral_from = [&](long double a) {
        return std::pow(a, static_cast<long double>(1.0 - s)) / (static_cast<long double>(s) - 1.0L);
    }(m);
    const long double integral_from_next = std::pow(m + 1.0L, static_cast<long double>(1.0 - s)) /
                                           (static_cast<long double>(s) - 1.0L);
    return {static_cast<double>(sum + integral_from_next), static_cast<double>(sum + integral_from)};
}

enum class Flavor { Flat, Moderate, Steep, ExactUniform };

/// Random normalized distributions with varied decay profiles.
inline SchmidtDistribution random_distribution(std::mt19937_64& rng, std::int64_t max_d,
                                               std::int64_t min_d = 1) {
    std::uniform_int_distribution<std::int64_t> dd(min_d, max_d);
    const std::int64_t d = dd(rng);
    std::uniform_int_distribution<int> which(0, 3);
    const auto flavor = static_cast<Flavor>(which(rng));
    if (flavor == Flavor::ExactUniform) return SchmidtDistribution::uniform(d);
    double scale = 0.3;
    if (flavor == Flavor::Moderate) scale = 1.5;
    if (flavor == Flavor::Steep) scale = 4.0;
    std::normal_distribution<double> gauss(0.0, scale);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (auto& x : w) x = std::exp(gauss(rng));
    return SchmidtDistribution::from_weights(w);
}

}  // namespace coboson::test
