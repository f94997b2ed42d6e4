// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>

#include "coboson/errors.hpp"

namespace coboson {

namespace detail {
// log(1 - e^{-x}) for x > 0, accurate near both ends.
inline double log1mexp(double x) {
    constexpr double ln2 = 0.6931471805599453;
    return x > ln2 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}
}  // namespace detail

/// Signed real stored as (sign, ln|x|). Products of thousands of
/// sub-unit factors stay representable where a plain double would
/// underflow; sums go through log-sum-exp.
class LogReal {
public:
    constexpr LogReal() = default;

    static LogReal from_value(double x) {
        LogReal r;
        if (x == 0.0) return r;
        r.sign_ = x > 0.0 ? 1 : -1;
        r.lg_ = std::log(std::abs(x));
        return r;
    }

    /// sign * exp(lg)
    static LogReal from_log(double lg, int sign = 1) {
        LogReal r;
        if (sign == 0 || lg == -std::numeric_limits<double>::infinity()) return r;
        r.sign_ = sign > 0 ? 1 : -1;
        r.lg_ = lg;
        return r;
    }

    static LogReal zero() { return LogReal{}; }
    static LogReal one() { return from_log(0.0, 1); }

    [[nodiscard]] bool is_zero() const { return sign_ == 0; }
    [[nodiscard]] int sign() const { return sign_; }
    /// ln|x|; -inf when zero.
    [[nodiscard]] double log_abs() const { return lg_; }

    /// Back to double; may underflow to 0 or overflow to +-inf.
    [[nodiscard]] double value() const {
        return sign_ == 0 ? 0.0 : static_cast<double>(sign_) * std::exp(lg_);
    }

    friend LogReal operator*(LogReal a, LogReal b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_log(a.lg_ + b.lg_, a.sign_ * b.sign_);
    }

    friend LogReal operator/(LogReal a, LogReal b) {
        if (b.is_zero()) throw UndefinedRatioError("LogReal: division by zero");
        if (a.is_zero()) return zero();
        return from_log(a.lg_ - b.lg_, a.sign_ * b.sign_);
    }

    friend LogReal operator+(LogReal a, LogReal b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const LogReal& hi = a.lg_ >= b.lg_ ? a : b;
        const LogReal& lo = a.lg_ >= b.lg_ ? b : a;
        if (hi.sign_ == lo.sign_) {
            return from_log(hi.lg_ + std::log1p(std::exp(lo.lg_ - hi.lg_)), hi.sign_);
        }
        const double d = hi.lg_ - lo.lg_;
        if (d == 0.0) return zero();  // exact cancellation
        return from_log(hi.lg_ + detail::log1mexp(d), hi.sign_);
    }

    friend LogReal operator-(LogReal a) {
        a.sign_ = -a.sign_;
        return a;
    }

    friend LogReal operator-(LogReal a, LogReal b) { return a + (-b); }

    [[nodiscard]] LogReal pow_int(std::int64_t k) const {
        if (k == 0) return one();
        if (is_zero()) return zero();
        const int s = (sign_ < 0 && (k & 1)) ? -1 : 1;
        return from_log(lg_ * static_cast<double>(k), s);
    }

    friend bool operator==(LogReal a, LogReal b) {
        return a.sign_ == b.sign_ && (a.sign_ == 0 || a.lg_ == b.lg_);
    }

    friend std::partial_ordering operator<=>(LogReal a, LogReal b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        if (a.sign_ == 0) return std::partial_ordering::equivalent;
        return a.sign_ > 0 ? a.lg_ <=> b.lg_ : b.lg_ <=> a.lg_;
    }

private:
    double lg_ = -std::numeric_limits<double>::infinity();
    std::int8_t sign_ = 0;
};

}  // namespace coboson
