// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/numeric.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/spectrum.hpp"
#include "coboson/symfun.hpp"

namespace coboson {

/// Outcome of the lambda_i < lambda_f prefix-sum test. Violated carries
/// the first rank whose initial prefix exceeds the final one and by how
/// much; Inconclusive means the walk ran out of budget before either a
/// violation or a certified-safe bound on the remaining mass.
struct MajorizationVerdict {
    enum class Outcome { Majorized, Violated, Inconclusive };

    Outcome outcome = Outcome::Inconclusive;
    std::optional<std::uint64_t> violation_index;  // 1-based rank
    std::optional<double> gap;                     // prefix_i - prefix_f there
    double checked_prefixes = 0.0;                 // ranks verified

    [[nodiscard]] const char* outcome_name() const {
        switch (outcome) {
            case Outcome::Majorized: return "Majorized";
            case Outcome::Violated: return "Violated";
            case Outcome::Inconclusive: return "InconclusiveAfterK";
        }
        return "InconclusiveAfterK";
    }
};

namespace detail {

/// Rank-synchronized prefix walk over two descending run streams.
/// Within a pair of runs the prefix difference is linear in the rank,
/// so comparing at run boundaries (and solving for the first interior
/// crossing on violation) checks every rank exactly. The step budget
/// counts stream advances, not ranks: degenerate spectra verify
/// astronomically many ranks per step.
inline MajorizationVerdict walk_majorization(SpectrumStream& init, SpectrumStream& fin,
                                             std::int64_t max_steps, double tol) {
    MajorizationVerdict out;
    // total initial mass, read off the stream before any emission
    const double total_init = init.remaining_mass() + init.prefix_sum();
    double ranks = 0.0;
    double pi = 0.0, pf = 0.0;
    auto ri = init.next_run();
    auto rf = fin.next_run();
    double ci = ri ? ri->count : 0.0;
    double cf = rf ? rf->count : 0.0;
    std::int64_t steps = 2;

    for (;;) {
        if (!ri) {
            // every rank of the initial vector has been compared
            out.outcome = MajorizationVerdict::Outcome::Majorized;
            out.checked_prefixes = ranks;
            return out;
        }
        if (!rf) {
            // final stream exhausted: its prefix sits at the full mass 1
            // (the implicit zero padding), which dominates any remaining
            // initial prefix
            out.outcome = MajorizationVerdict::Outcome::Majorized;
            out.checked_prefixes = ranks;
            return out;
        }
        // everything the initial vector can still accumulate beyond the
        // current rank fits under the final prefix already reached
        if (total_init - pi <= (pf - pi) + tol) {
            out.outcome = MajorizationVerdict::Outcome::Majorized;
            out.checked_prefixes = ranks;
            return out;
        }

        const double vi = ri->value;
        const double vf = rf->value;
        const double m = std::min(ci, cf);
        const double diff0 = pi - pf;
        const double dv = vi - vf;
        const double diff_end = diff0 + m * dv;
        if (diff_end > tol) {
            // diff0 <= tol held at the previous boundary, so dv > 0 here
            double t = std::floor((tol - diff0) / dv) + 1.0;
            t = std::min(std::max(t, 1.0), m);
            out.outcome = MajorizationVerdict::Outcome::Violated;
            const double idx = ranks + t;
            out.violation_index = idx < 9e18 ? static_cast<std::uint64_t>(idx) : UINT64_MAX;
            out.gap = diff0 + t * dv;
            out.checked_prefixes = idx;
            return out;
        }

        pi += m * vi;
        pf += m * vf;
        ranks += m;
        ci -= m;
        cf -= m;
        if (ci < 1.0) {
            ri = init.next_run();
            ci = ri ? ri->count : 0.0;
            ++steps;
        }
        if (cf < 1.0) {
            rf = fin.next_run();
            cf = rf ? rf->count : 0.0;
            ++steps;
        }
        if (steps > max_steps) {
            out.outcome = MajorizationVerdict::Outcome::Inconclusive;
            out.checked_prefixes = ranks;
            return out;
        }
    }
}

/// Best available lower bound on chi_tilde_n of the *untruncated*
/// distribution: the DP value of the truncated one (always a lower
/// bound, since every term is positive), improved by the chained purity
/// bound when the family's exact d->infinity purity is known. For
/// heavy-tail families (zeta near s = 1) the DP value is hopelessly
/// small and the chain bound is what certifies the counterexample.
inline LogReal chi_tilde_lower_bound(const SchmidtDistribution& dist, const ChiSequence& chi,
                                     std::int64_t n) {
    LogReal best = chi.chi_tilde(n);
    if (auto p = dist.purity_closed_form();
        p && dist.family().kind != FamilyKind::Uniform && *p > 0.0 && *p <= 1.0) {
        const LogReal chain = chi_lower_chain(*p, n);
        if (chain.sign() > 0 && chain > best) best = chain;
    }
    return best;
}

}  // namespace detail

struct FirstElementResult {
    bool violated = false;
    ///  log lambda_0^n - log(lambda_0...lambda_{n-1} / chi_tilde_n)
    double log_gap = 0.0;
};

/// First-element test of the majorization relation:
/// lambda_0^n > (lambda_0...lambda_{n-1}) / chi_tilde_n, evaluated in
/// log space. Uses the certified chi_tilde lower bound, so a positive
/// result is a proof of violation even for truncated heavy-tail
/// families (where the gap is then understated).
[[nodiscard]] inline FirstElementResult first_element_test(const SchmidtDistribution& dist,
                                                           std::int64_t n,
                                                           const ChiSequence& chi) {
    if (n < 1) throw DomainError("first_element_test: n must be >= 1");
    if (n > dist.d()) throw PauliBlockedError("first_element_test: n exceeds mode count");
    const LogReal ct = detail::chi_tilde_lower_bound(dist, chi, n);
    if (ct.sign() <= 0) throw ConsistencyError("first_element_test: chi_tilde_n <= 0");
    double log_gamma_prod = 0.0;
    const double l0 = dist.lambda(0);
    for (std::int64_t j = 1; j < n; ++j) log_gamma_prod += std::log(dist.lambda(j) / l0);
    const double gap = ct.log_abs() - log_gamma_prod;
    return {gap > 0.0, gap};
}

struct GammaCondition {
    bool fails_majorization = false;
    double log_lhs = 0.0;  // log(gamma_1 ... gamma_{n-1})
    double log_rhs = 0.0;  // log((1/n!)(1-(n-1)P)^{n-1}); -inf if non-positive
};

/// Sufficient condition for majorization failure:
/// gamma_1...gamma_{n-1} < (1/n!)(1-(n-1)P)^{n-1}, with gamma_j =
/// lambda_j/lambda_0. Implies the first-element violation through the
/// chained chi bound. P is the family closed-form purity when known
/// (exact for the untruncated distribution), else the retained-mode sum.
[[nodiscard]] inline GammaCondition gamma_condition(const SchmidtDistribution& dist,
                                                    std::int64_t n) {
    if (n < 2) throw DomainError("gamma_condition: n must be >= 2");
    GammaCondition g;
    const double l0 = dist.lambda(0);
    const std::int64_t top = std::min<std::int64_t>(n, dist.d());
    for (std::int64_t j = 1; j < top; ++j) g.log_lhs += std::log(dist.lambda(j) / l0);
    if (top < n) g.log_lhs = -std::numeric_limits<double>::infinity();  // some gamma_j = 0

    double p = dist.purity();
    if (auto cf = dist.purity_closed_form(); cf && dist.family().kind != FamilyKind::Uniform)
        p = *cf;
    const LogReal rhs = chi_lower_chain(p, n);
    if (rhs.sign() <= 0) {
        g.log_rhs = -std::numeric_limits<double>::infinity();
        g.fails_majorization = false;
        return g;
    }
    g.log_rhs = rhs.log_abs();
    g.fails_majorization = g.log_lhs < g.log_rhs;
    return g;
}

struct UniformFinalResult {
    bool sufficient = false;
    double mu = 0.0;  // n/d
};

/// lambda_0^n <= C(d,n)^{-1}: then lambda_i < u_f < lambda_f and LOCC
/// condensation is guaranteed. In the d -> infinity limit at fixed
/// mu = n/d this is lambda_0 <= mu.
[[nodiscard]] inline UniformFinalResult uniform_final_test(const SchmidtDistribution& dist,
                                                           std::int64_t n,
                                                           std::int64_t d = -1) {
    if (n < 1) throw DomainError("uniform_final_test: n must be >= 1");
    if (d < 0) d = dist.d();
    if (n > d) throw PauliBlockedError("uniform_final_test: n exceeds mode count");
    UniformFinalResult r;
    r.mu = static_cast<double>(n) / static_cast<double>(d);
    r.sufficient =
        static_cast<double>(n) * std::log(dist.lambda(0)) <= -log_binomial(d, n);
    return r;
}

struct SingleCrossingResult {
    bool majorized_by_geometric = false;
    std::int64_t crossing_count = 0;
};

/// Single-crossing sufficient criterion against a geometric target:
/// if lambda_0 <= 1-z and (lambda_j - g_j) changes sign at most once
/// over the common support, then dist < geometric(z) and the state is
/// LOCC-convertible to a good cobosonic one. The target is the
/// geometric law truncated to the common support and renormalized, so
/// both sides carry comparable mass.
[[nodiscard]] inline SingleCrossingResult single_crossing_test(const SchmidtDistribution& dist,
                                                               double z) {
    if (!(z > 0.0 && z < 1.0)) throw DomainError("single_crossing_test: z must be in (0,1)");
    SingleCrossingResult r;
    const auto d = dist.d();
    const double norm = -std::expm1(static_cast<double>(d) * std::log(z));  // 1 - z^d
    int last_sign = 0;
    double g = (1.0 - z) / norm;
    for (std::int64_t j = 0; j < d; ++j, g *= z) {
        const double diff = dist.lambda(j) - g;
        const int s = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
        if (s != 0) {
            if (last_sign != 0 && s != last_sign) ++r.crossing_count;
            last_sign = s;
        }
    }
    r.majorized_by_geometric = dist.lambda(0) <= (1.0 - z) && r.crossing_count <= 1;
    return r;
}

/// One level of the geometric-family majorization proof: both spectra
/// collapse onto powers z^l whose degeneracies are counted exactly, and
/// the margin prefix_f - prefix_i is evaluated at the rank closing each
/// initial level. Values carry the common (1-z)^n factor removed, as in
/// the degeneracy argument.
struct PrefixProofRow {
    std::int64_t level = 0;
    std::uint64_t deg_initial = 0;   // C(l+n-1, l)
    std::uint64_t deg_final = 0;     // partitions of l into at most n parts
    double prefix_initial = 0.0;
    double prefix_final = 0.0;
    double margin = 0.0;
};

/// Exact level-by-level verification of the geometric majorization
/// proof for the untruncated family, up to exponent l_max. A negative
/// margin beyond roundoff would contradict the degeneracy argument and
/// throws ConsistencyError.
[[nodiscard]] inline std::vector<PrefixProofRow> geometric_prefix_proof(double z,
                                                                        std::int64_t n,
                                                                        std::int64_t l_max) {
    if (!(z > 0.0 && z < 1.0)) throw DomainError("geometric_prefix_proof: z must be in (0,1)");
    if (n < 2) throw DomainError("geometric_prefix_proof: n must be >= 2");
    if (l_max < 0) throw DomainError("geometric_prefix_proof: l_max must be >= 0");

    // common multiplicative factor of the final vector:
    // z^{n(n-1)/2} / chi_tilde_n = prod_{k=1..n-1} (1 + z + ... + z^k)
    long double factor = 1.0L;
    {
        long double geo = 1.0L;  // 1 + z + ... + z^k
        long double zk = 1.0L;
        for (std::int64_t k = 1; k < n; ++k) {
            zk *= z;
            geo += zk;
            factor *= geo;
        }
    }

    // partitions of l into at most n parts (equivalently parts <= n),
    // rebuilt with doubling growth when the final walk outruns it
    std::vector<std::uint64_t> part;
    auto extend_partitions = [&](std::size_t upto) {
        if (upto < part.size()) return;
        std::size_t cap = std::max<std::size_t>(64, 2 * part.size());
        cap = std::max(cap, upto + 1);
        part.assign(cap, 0);
        part[0] = 1;
        for (std::int64_t k = 1; k <= n; ++k)
            for (std::size_t l = static_cast<std::size_t>(k); l < part.size(); ++l)
                part[l] += part[l - static_cast<std::size_t>(k)];
    };
    extend_partitions(static_cast<std::size_t>(l_max));

    std::vector<PrefixProofRow> rows;
    rows.reserve(static_cast<std::size_t>(l_max) + 1);

    using u128 = unsigned __int128;
    u128 rank = 0;              // ranks covered by initial levels <= l
    long double prefix_i = 0.0L;
    u128 fin_count = 0;         // final entries consumed so far
    long double fin_mass = 0.0L;  // sum of their z^{l'} values (pre-factor)
    std::size_t fin_level = 0;
    u128 fin_taken = 0;         // entries consumed within fin_level
    long double fin_z = 1.0L;   // z^{fin_level}
    long double zi = 1.0L;      // z^l

    for (std::int64_t l = 0; l <= l_max; ++l) {
        PrefixProofRow row;
        row.level = l;
        row.deg_initial = binomial_u64(l + n - 1, l);
        row.deg_final = part[static_cast<std::size_t>(l)];

        rank += row.deg_initial;
        prefix_i += static_cast<long double>(row.deg_initial) * zi;

        // advance the final stream until `rank` entries are consumed
        while (fin_count < rank) {
            extend_partitions(fin_level);
            const u128 avail = part[fin_level];
            const u128 take = std::min<u128>(avail - fin_taken, rank - fin_count);
            fin_mass += static_cast<long double>(take) * fin_z;
            fin_count += take;
            fin_taken += take;
            if (fin_taken == avail) {
                ++fin_level;
                fin_z *= z;
                fin_taken = 0;
            }
        }

        row.prefix_initial = static_cast<double>(prefix_i);
        row.prefix_final = static_cast<double>(factor * fin_mass);
        row.margin = row.prefix_final - row.prefix_initial;
        if (row.margin < -1e-12)
            throw ConsistencyError("geometric_prefix_proof: negative margin at level " +
                                   std::to_string(l));
        rows.push_back(row);
        zi *= z;
    }
    return rows;
}

/// Decides whether n single-coboson states can be LOCC-condensed into
/// the n-coboson state: walks the initial and final spectra comparing
/// prefix sums at every rank.
///
/// Heavy-tail zeta families cannot be truncated honestly (three quarters
/// of the mass lives beyond any feasible cutoff near s = 1), so for
/// those the first element is tested against the certified analytic
/// chi_tilde bound instead: Violated is then a proof, anything else is
/// reported Inconclusive.
[[nodiscard]] inline MajorizationVerdict check_majorization(const SchmidtDistribution& dist,
                                                            std::int64_t n,
                                                            std::int64_t max_prefixes = 1000000,
                                                            double tol = 1e-12) {
    if (n < 1) throw DomainError("check_majorization: n must be >= 1");
    if (!(tol > 0.0)) throw DomainError("check_majorization: tolerance must be positive");
    if (n > dist.d())
        throw PauliBlockedError("check_majorization: n exceeds mode count");

    const bool heavy_tail = dist.family().kind == FamilyKind::Zeta && dist.tail_mass() > 1e-3;
    auto chi = elementary_symmetric(dist, n);
    if (heavy_tail && n >= 2) {
        const auto fe = first_element_test(dist, n, chi);
        MajorizationVerdict v;
        if (fe.violated) {
            v.outcome = MajorizationVerdict::Outcome::Violated;
            v.violation_index = 1;
            // conservative linear gap from the chi_tilde lower bound
            double log_first_f = -detail::chi_tilde_lower_bound(dist, chi, n).log_abs();
            for (std::int64_t j = 0; j < n; ++j) log_first_f += std::log(dist.lambda(j));
            v.gap = std::exp(static_cast<double>(n) * std::log(dist.lambda(0))) -
                    std::exp(log_first_f);
            v.checked_prefixes = 1.0;
        } else {
            v.outcome = MajorizationVerdict::Outcome::Inconclusive;
            v.checked_prefixes = 0.0;
        }
        return v;
    }

    auto init = initial_spectrum(dist, n);
    auto fin = final_spectrum(dist, n, chi);
    return detail::walk_majorization(*init, *fin, max_prefixes, tol);
}

}  // namespace coboson
