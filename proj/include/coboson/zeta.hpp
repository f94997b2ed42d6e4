// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

#include "coboson/errors.hpp"
#include "coboson/numeric.hpp"

namespace coboson {

namespace detail {

// Euler-Maclaurin tail with Bernoulli corrections through B_6; the
// asymptotic series needs M large enough before it is trustworthy.
[[nodiscard]] inline double em_tail(double s, double m) {
    const double ms = std::pow(m, -s);  // M^{-s}
    double t = ms * m / (s - 1.0);      // integral term M^{1-s}/(s-1)
    t -= 0.5 * ms;
    t += (s / 12.0) * ms / m;
    t -= (s * (s + 1.0) * (s + 2.0) / 720.0) * ms / (m * m * m);
    t += (s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0) * ms /
         (m * m * m * m * m);
    return t;
}

}  // namespace detail

/// Tail sum_{k>M} k^{-s}, accurate to ~1e-15 relative for any M >= 1:
/// terms up to a pivot of 128 are summed explicitly, the rest comes
/// from the Euler-Maclaurin expansion (naive summation alone cannot
/// reach 1e-12 near s = 1).
[[nodiscard]] inline double zeta_tail_sum(double s, std::int64_t M) {
    if (!(s > 1.0)) throw DomainError("zeta_tail_sum: requires s > 1");
    if (M < 1) throw DomainError("zeta_tail_sum: requires M >= 1");
    constexpr std::int64_t kPivot = 128;
    if (M >= kPivot) return detail::em_tail(s, static_cast<double>(M));
    NeumaierSum head;
    for (std::int64_t k = M + 1; k <= kPivot; ++k)
        head.add(std::pow(static_cast<double>(k), -s));
    return head.value() + detail::em_tail(s, static_cast<double>(kPivot));
}

/// Riemann zeta for s > 1: 128-term partial sum plus tail correction.
[[nodiscard]] inline double riemann_zeta(double s) {
    if (!(s > 1.0)) throw DomainError("riemann_zeta: series diverges for s <= 1");
    constexpr std::int64_t M = 128;
    NeumaierSum sum;
    for (std::int64_t k = 1; k <= M; ++k) {
        sum.add(std::pow(static_cast<double>(k), -s));
    }
    return sum.value() + detail::em_tail(s, static_cast<double>(M));
}

}  // namespace coboson
