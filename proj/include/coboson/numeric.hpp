// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <system_error>

#include "coboson/errors.hpp"

namespace coboson {

/// Neumaier-compensated running sum. Accumulates in double with a
/// first-order error term; sufficient for the 1e-12 invariants on
/// million-term series.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

[[nodiscard]] inline double compensated_sum(std::span<const double> xs) {
    NeumaierSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

/// ln(n!)
[[nodiscard]] inline double log_factorial(std::int64_t n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

/// ln C(n, k); -inf for k outside [0, n].
[[nodiscard]] inline double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// Exact C(n, k) in 64 bits; throws ResourceError on overflow.
[[nodiscard]] inline std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i);
        r /= static_cast<unsigned __int128>(i);
        if (r > static_cast<unsigned __int128>(UINT64_MAX))
            throw ResourceError("binomial_u64: value exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

/// Shortest round-trip decimal form of a double (the fixed CSV/JSON
/// number format; identical inputs always serialize identically).
[[nodiscard]] inline std::string format_double(double x) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw ConsistencyError("format_double: to_chars failed");
    return std::string(buf, ptr);
}

}  // namespace coboson
