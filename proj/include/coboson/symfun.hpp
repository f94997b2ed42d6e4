// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/log_real.hpp"
#include "coboson/numeric.hpp"
#include "coboson/schmidt.hpp"

namespace coboson {

/// The normalization sequence of N-coboson states.
///
/// chi_tilde[N] is the N-th elementary symmetric polynomial of the
/// Schmidt coefficients; chi_N = N! * chi_tilde[N] normalizes
/// (c^dag)^N |0>. Values are held as LogReal because chi_tilde
/// underflows double precision long before the ratios of interest
/// leave O(1). Entries beyond the mode count d are exactly zero
/// (Pauli blocking).
class ChiSequence {
public:
    enum class Source { Dp, Newton, Oracle };

    ChiSequence(std::vector<LogReal> chi_tilde, Source source, double cancellation = 1.0)
        : chi_tilde_(std::move(chi_tilde)), source_(source), cancellation_(cancellation) {}

    [[nodiscard]] std::int64_t n_max() const {
        return static_cast<std::int64_t>(chi_tilde_.size()) - 1;
    }
    [[nodiscard]] Source source() const { return source_; }

    /// Largest intermediate partial-sum magnitude over the result
    /// magnitude seen while building the sequence. 1 for the
    /// cancellation-free DP route; the Newton route is untrustworthy
    /// when this grows past ~1e12.
    [[nodiscard]] double cancellation_indicator() const { return cancellation_; }

    [[nodiscard]] LogReal chi_tilde(std::int64_t n) const {
        check_range(n);
        return chi_tilde_[static_cast<std::size_t>(n)];
    }

    /// chi_n = n! * chi_tilde_n
    [[nodiscard]] LogReal chi(std::int64_t n) const {
        return chi_tilde(n) * LogReal::from_log(log_factorial(n));
    }

private:
    void check_range(std::int64_t n) const {
        if (n < 0 || n > n_max()) throw DomainError("ChiSequence: order out of range");
    }

    std::vector<LogReal> chi_tilde_;
    Source source_;
    double cancellation_;
};

/// chi_tilde_0..n_max by the stable one-pass recurrence
/// e_k^(m) = e_k^(m-1) + lambda_m e_{k-1}^(m-1); all terms positive, so
/// no cancellation. O(d * n_max). This is the authoritative route.
[[nodiscard]] inline ChiSequence elementary_symmetric(const SchmidtDistribution& dist,
                                                      std::int64_t n_max) {
    if (n_max < 0) throw DomainError("elementary_symmetric: n_max must be >= 0");
    std::vector<LogReal> e(static_cast<std::size_t>(n_max) + 1, LogReal::zero());
    e[0] = LogReal::one();
    std::int64_t m = 0;
    for (double lam : dist.lambdas()) {
        ++m;
        const LogReal l = LogReal::from_value(lam);
        const std::int64_t top = std::min(n_max, m);
        for (std::int64_t k = top; k >= 1; --k) {
            auto& ek = e[static_cast<std::size_t>(k)];
            ek = ek + l * e[static_cast<std::size_t>(k - 1)];
        }
    }
    return ChiSequence(std::move(e), ChiSequence::Source::Dp);
}

/// Cross-check route via the signed Newton identity
///   N e_N = sum_{j=1..N} (-1)^{j-1} P_j e_{N-j}.
/// Near-uniform spectra cancel catastrophically here; the indicator
/// records how badly, and callers should trust the DP route instead
/// once it exceeds ~1e6.
[[nodiscard]] inline ChiSequence chi_from_newton(const SchmidtDistribution& dist,
                                                 std::int64_t n_max) {
    if (n_max < 0) throw DomainError("chi_from_newton: n_max must be >= 0");
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (std::int64_t j = 1; j <= n_max; ++j)
        p[static_cast<std::size_t>(j)] = dist.power_sum(j);

    std::vector<LogReal> e(static_cast<std::size_t>(n_max) + 1, LogReal::zero());
    e[0] = LogReal::one();
    double worst = 1.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        LogReal acc = LogReal::zero();
        double max_mag = 0.0;
        for (std::int64_t j = 1; j <= n; ++j) {
            LogReal term = LogReal::from_value(p[static_cast<std::size_t>(j)]) *
                           e[static_cast<std::size_t>(n - j)];
            if (j % 2 == 0) term = -term;
            acc = acc + term;
            max_mag = std::max(max_mag, term.log_abs());
            max_mag = std::max(max_mag, acc.log_abs());
        }
        acc = acc / LogReal::from_value(static_cast<double>(n));
        e[static_cast<std::size_t>(n)] = acc;
        if (!acc.is_zero()) {
            worst = std::max(worst, std::exp(max_mag - std::log(static_cast<double>(n)) -
                                             acc.log_abs()));
        } else if (max_mag > -std::numeric_limits<double>::infinity()) {
            worst = std::numeric_limits<double>::infinity();
        }
    }
    return ChiSequence(std::move(e), ChiSequence::Source::Newton, worst);
}

/// F_n = chi_n / chi_{n-1} = n * chi_tilde_n / chi_tilde_{n-1}.
/// Returns exactly 0 for a Pauli-blocked numerator; a vanishing
/// denominator is an error (no (n-1)-coboson state exists to divide by).
[[nodiscard]] inline double f_ratio(const ChiSequence& chi, std::int64_t n) {
    if (n < 1) throw DomainError("f_ratio: n must be >= 1");
    const LogReal den = chi.chi_tilde(n - 1);
    if (den.is_zero())
        throw UndefinedRatioError("f_ratio: chi_{n-1} = 0, distribution cannot host n-1 cobosons");
    const LogReal num = chi.chi_tilde(n);
    if (num.is_zero()) return 0.0;
    return (LogReal::from_value(static_cast<double>(n)) * num / den).value();
}

/// The purity bounds on chi_{n+1}/chi_n: (1 - nP, 1 - P). The lower
/// bound goes negative for nP > 1 and is returned as-is.
struct FBounds {
    double lower;
    double upper;
};

[[nodiscard]] inline FBounds f_bounds(double purity, std::int64_t n) {
    if (!(purity > 0.0 && purity <= 1.0)) throw DomainError("f_bounds: purity must be in (0,1]");
    if (n < 1) throw DomainError("f_bounds: n must be >= 1");
    return {1.0 - static_cast<double>(n) * purity, 1.0 - purity};
}

/// Series approximation chi_n/chi_{n-1} ~ 1 - n P_2 + n^2 (P_3 - P_2^2),
/// with remainder O(n^3 P_2^3).
[[nodiscard]] inline double f_series_approx(const SchmidtDistribution& dist, std::int64_t n) {
    if (n < 1) throw DomainError("f_series_approx: n must be >= 1");
    const double p2 = dist.power_sum(2);
    const double p3 = dist.power_sum(3);
    const double nn = static_cast<double>(n);
    return 1.0 - nn * p2 + nn * nn * (p3 - p2 * p2);
}

/// <eps_n|eps_n> = 1 - n chi_n/chi_{n-1} + (n-1) chi_{n+1}/chi_n, the
/// squared norm of the non-bosonic remainder of c|n>. Needs chi up to
/// n+1 unless chi_n is already zero (then the last term is defined 0).
[[nodiscard]] inline double epsilon_norm(const ChiSequence& chi, std::int64_t n) {
    if (n < 1) throw DomainError("epsilon_norm: n must be >= 1");
    const LogReal prev = chi.chi_tilde(n - 1);
    if (prev.is_zero()) throw UndefinedRatioError("epsilon_norm: chi_{n-1} = 0");
    const LogReal cur = chi.chi_tilde(n);
    const double r1 = f_ratio(chi, n);
    double r2 = 0.0;
    if (!cur.is_zero()) {
        if (n + 1 > chi.n_max())
            throw DomainError("epsilon_norm: sequence too short, need chi_{n+1}");
        r2 = f_ratio(chi, n + 1);
    }
    const double v =
        1.0 - static_cast<double>(n) * r1 + static_cast<double>(n - 1) * r2;
    if (v < -1e-12)
        throw ConsistencyError("epsilon_norm: negative norm, chi sequence is inconsistent");
    return std::max(v, 0.0);
}

/// <1 - [c, c^dag]>_n = 2 (1 - chi_{n+1}/chi_n).
[[nodiscard]] inline double departure_expectation(const ChiSequence& chi, std::int64_t n) {
    if (n < 0) throw DomainError("departure_expectation: n must be >= 0");
    if (chi.chi_tilde(n).is_zero())
        throw UndefinedRatioError("departure_expectation: chi_n = 0");
    if (n + 1 > chi.n_max())
        throw DomainError("departure_expectation: sequence too short, need chi_{n+1}");
    return 2.0 * (1.0 - f_ratio(chi, n + 1));
}

/// <c^dag c>_n = n - (n-1)/2 * <1 - [c, c^dag]>_n.
[[nodiscard]] inline double number_expectation(const ChiSequence& chi, std::int64_t n) {
    return static_cast<double>(n) -
           0.5 * static_cast<double>(n - 1) * departure_expectation(chi, n);
}

/// Chained lower bound chi_tilde_n >= (1/n!) (1 - (n-1)P)^{n-1},
/// obtained by applying the purity bound n times. Valid for normalized
/// distributions while every chain factor 1 - (j-1)P stays
/// non-negative; once (n-1)P > 1 no bound exists, and the magnitude is
/// returned with a negative sign so it cannot be mistaken for one
/// (an even power of the raw base would look deceptively positive).
[[nodiscard]] inline LogReal chi_lower_chain(double purity, std::int64_t n) {
    if (!(purity > 0.0 && purity <= 1.0))
        throw DomainError("chi_lower_chain: purity must be in (0,1]");
    if (n < 1) throw DomainError("chi_lower_chain: n must be >= 1");
    const double base = 1.0 - static_cast<double>(n - 1) * purity;
    const LogReal mag = LogReal::from_value(std::abs(base)).pow_int(n - 1) /
                        LogReal::from_log(log_factorial(n));
    return base >= 0.0 ? mag : -mag;
}

/// All per-n bosonic-quality indicators in one row.
struct QualityReport {
    std::int64_t n = 0;
    double f_ratio = 0.0;       // chi_n / chi_{n-1}
    double alpha = 0.0;         // sqrt(f_ratio)
    double eps_norm = 0.0;      // <eps_n|eps_n>
    double departure = 0.0;     // <1 - [c,c^dag]>_n
    double number_exp = 0.0;    // <c^dag c>_n
    double lower_bound = 0.0;   // 1 - n P   (bounds chi_{n+1}/chi_n)
    double upper_bound = 0.0;   // 1 - P
    double series_approx = 0.0; // 1 - n P_2 + n^2 (P_3 - P_2^2)
};

/// Requires chi computed through n+1 and chi_n > 0 (i.e. n <= d).
[[nodiscard]] inline QualityReport make_quality_report(const SchmidtDistribution& dist,
                                                       const ChiSequence& chi,
                                                       std::int64_t n) {
    QualityReport q;
    q.n = n;
    q.f_ratio = f_ratio(chi, n);
    q.alpha = std::sqrt(q.f_ratio);
    q.eps_norm = epsilon_norm(chi, n);
    q.departure = departure_expectation(chi, n);
    q.number_exp = number_expectation(chi, n);
    const double p = dist.purity();
    const FBounds b = f_bounds(p, n);
    q.lower_bound = b.lower;
    q.upper_bound = b.upper;
    q.series_approx = f_series_approx(dist, n);
    return q;
}

}  // namespace coboson
