// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/numeric.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/symfun.hpp"

namespace coboson {

/// Descending eigenvalue stream of a reduced density matrix.
///
/// Initial spectra enumerate the d^n products lambda_{j_1}...lambda_{j_n}
/// over ordered index tuples (the product state of n cobosons in separate
/// wells); final spectra enumerate the C(d,n) products over strictly
/// increasing tuples divided by chi_tilde_n (the n-coboson condensate).
/// Values are delivered as runs (value, multiplicity) so that degenerate
/// spectra cost one step instead of one step per copy.
///
/// Single consumer; distinct streams are independent.
class SpectrumStream {
public:
    enum class Kind { Initial, Final };

    struct Run {
        double value = 0.0;
        double count = 0.0;  // integral; exact below 2^53
    };

    virtual ~SpectrumStream() = default;

    /// Next block of equal eigenvalues, non-increasing across calls;
    /// nullopt once exhausted.
    [[nodiscard]] std::optional<Run> next_run() {
        auto run = generate();
        if (!run) {
            exhausted_ = true;
            return std::nullopt;
        }
        if (last_value_ >= 0.0 && run->value > last_value_ * (1.0 + 1e-12) + 1e-300)
            throw ConsistencyError("SpectrumStream: values not non-increasing");
        if (last_value_ >= 0.0) run->value = std::min(run->value, last_value_);
        last_value_ = run->value;
        emitted_count_ += run->count;
        prefix_sum_ += run->value * run->count;
        return run;
    }

    /// Single-eigenvalue view over the same sequence.
    [[nodiscard]] std::optional<double> next() {
        if (pending_.count < 1.0) {
            auto run = next_run();
            if (!run) return std::nullopt;
            pending_ = *run;
        }
        pending_.count -= 1.0;
        return pending_.value;
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double emitted_count() const { return emitted_count_; }
    [[nodiscard]] double prefix_sum() const { return prefix_sum_; }
    [[nodiscard]] bool exhausted() const { return exhausted_ && pending_.count < 1.0; }

    /// Upper bound on the mass not yet emitted.
    [[nodiscard]] double remaining_mass() const {
        return std::max(0.0, total_mass_ - prefix_sum_);
    }

    /// d^n for initial, C(d,n) for final (the final vector is implicitly
    /// zero-padded to d^n for majorization purposes). Reported as a
    /// double; huge dimensions saturate.
    [[nodiscard]] double total_dimension() const { return total_dimension_; }

protected:
    SpectrumStream(Kind kind, double total_mass, double total_dimension)
        : kind_(kind), total_mass_(total_mass), total_dimension_(total_dimension) {}

    virtual std::optional<Run> generate() = 0;

private:
    Kind kind_;
    double total_mass_;
    double total_dimension_;
    double emitted_count_ = 0.0;
    double prefix_sum_ = 0.0;
    double last_value_ = -1.0;
    Run pending_{};
    bool exhausted_ = false;
};

enum class StreamMode { Auto, Exact, Lazy, Analytic };

namespace detail {

struct RunList {
    std::vector<SpectrumStream::Run> runs;  // sorted descending, equal values merged

    void sort_and_merge() {
        std::sort(runs.begin(), runs.end(),
                  [](const auto& a, const auto& b) { return a.value > b.value; });
        std::size_t w = 0;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (w > 0 && runs[w - 1].value == runs[i].value) {
                runs[w - 1].count += runs[i].count;
            } else {
                runs[w++] = runs[i];
            }
        }
        runs.resize(w);
    }
};

/// Materialized spectrum (exact mode).
class ExactStream final : public SpectrumStream {
public:
    ExactStream(Kind kind, double total_mass, double total_dimension, RunList list)
        : SpectrumStream(kind, total_mass, total_dimension), list_(std::move(list)) {}

private:
    std::optional<Run> generate() override {
        if (pos_ >= list_.runs.size()) return std::nullopt;
        return list_.runs[pos_++];
    }

    RunList list_;
    std::size_t pos_ = 0;
};

/// Multiplicity of an ordered tuple realizing a non-decreasing index
/// multiset: n! / prod(multiplicities!) = prod over runs of
/// C(prefix_length, run_length). Each binomial is exact; the product
/// is exact up to the long-double mantissa and approximate beyond.
inline double tuple_multiplicity(const std::vector<std::uint32_t>& t) {
    long double count = 1.0L;
    std::int64_t used = 0;
    std::size_t i = 0;
    while (i < t.size()) {
        std::size_t j = i;
        while (j < t.size() && t[j] == t[i]) ++j;
        const auto m = static_cast<std::int64_t>(j - i);
        used += m;
        count *= static_cast<long double>(binomial_u64(used, m));
        i = j;
    }
    return static_cast<double>(count);
}

struct TupleHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Best-first lazy enumeration over index tuples with a priority queue
/// and a visited set for deduplication. Initial spectra walk
/// non-decreasing tuples (with repetition multiplicity); final spectra
/// walk strictly increasing tuples.
class LazyProductStream final : public SpectrumStream {
public:
    LazyProductStream(Kind kind, const SchmidtDistribution& dist, std::int64_t n,
                      double scale, double total_mass, double total_dimension)
        : SpectrumStream(kind, total_mass, total_dimension),
          lambdas_(dist.lambdas().begin(), dist.lambdas().end()),
          n_(n),
          strict_(kind == Kind::Final),
          scale_(scale) {
        std::vector<std::uint32_t> root(static_cast<std::size_t>(n));
        if (strict_) {
            for (std::int64_t i = 0; i < n; ++i) root[static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(i);
        }
        push(std::move(root));
    }

private:
    struct Node {
        double value;
        double log_value;
        std::vector<std::uint32_t> indices;
    };
    struct NodeLess {
        bool operator()(const Node& a, const Node& b) const {
            if (a.value != b.value) return a.value < b.value;
            return a.log_value < b.log_value;
        }
    };

    void push(std::vector<std::uint32_t> idx) {
        if (!seen_.insert(idx).second) return;
        double v = scale_;
        double lg = std::log(scale_);
        for (auto j : idx) {
            v *= lambdas_[j];
            lg += std::log(lambdas_[j]);
        }
        heap_.push(Node{v, lg, std::move(idx)});
    }

    void expand(const std::vector<std::uint32_t>& t) {
        const auto d = static_cast<std::uint32_t>(lambdas_.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
            const std::uint32_t next = t[j] + 1;
            if (next >= d) continue;
            if (j + 1 < t.size()) {
                if (strict_ ? next >= t[j + 1] : next > t[j + 1]) continue;
            }
            auto child = t;
            child[j] = next;
            push(std::move(child));
        }
    }

    std::optional<Run> generate() override {
        if (heap_.empty()) return std::nullopt;
        const double v = heap_.top().value;
        double count = 0.0;
        while (!heap_.empty() && heap_.top().value == v) {
            auto idx = heap_.top().indices;
            heap_.pop();  // stays in seen_: equal-valued parents may re-derive it
            if (++popped_ > kNodeCap)
                throw ResourceError(
                    "lazy spectrum enumeration exceeded the node cap; the spectrum is "
                    "too large or too degenerate for tuple-level walking");
            count += strict_ ? 1.0 : tuple_multiplicity(idx);
            expand(idx);
        }
        return Run{v, count};
    }

    static constexpr std::int64_t kNodeCap = 20000000;

    std::vector<double> lambdas_;
    std::int64_t n_;
    bool strict_;
    double scale_;
    std::int64_t popped_ = 0;
    std::priority_queue<Node, std::vector<Node>, NodeLess> heap_;
    std::unordered_set<std::vector<std::uint32_t>, TupleHash> seen_;
};

using u128 = unsigned __int128;
using i128 = __int128;

/// Compositions of l into n parts, each part in [0, d-1], for every
/// l up to n(d-1). Sliding-window DP; exact in 128 bits.
inline std::vector<u128> bounded_compositions(std::int64_t n, std::int64_t d) {
    const std::int64_t L = n * (d - 1);
    std::vector<u128> c(static_cast<std::size_t>(L) + 1, 0);
    c[0] = 1;
    std::vector<u128> pref(static_cast<std::size_t>(L) + 2, 0);
    for (std::int64_t k = 0; k < n; ++k) {
        pref[0] = 0;
        for (std::int64_t l = 0; l <= L; ++l)
            pref[static_cast<std::size_t>(l) + 1] =
                pref[static_cast<std::size_t>(l)] + c[static_cast<std::size_t>(l)];
        for (std::int64_t l = L; l >= 0; --l) {
            const std::int64_t lo = std::max<std::int64_t>(0, l - (d - 1));
            c[static_cast<std::size_t>(l)] =
                pref[static_cast<std::size_t>(l) + 1] - pref[static_cast<std::size_t>(lo)];
        }
    }
    return c;
}

/// Partitions of l into at most n parts, each at most M, for every l
/// up to nM: coefficients of prod_{i=1..n} (1-q^{M+i})/(1-q^i).
inline std::vector<i128> box_partitions(std::int64_t n, std::int64_t M) {
    const std::int64_t deg = n * M + n * (n + 1) / 2;
    std::vector<i128> c(static_cast<std::size_t>(deg) + 1, 0);
    c[0] = 1;
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t l = deg; l >= M + i; --l)
            c[static_cast<std::size_t>(l)] -= c[static_cast<std::size_t>(l - (M + i))];
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t l = i; l <= deg; ++l)
            c[static_cast<std::size_t>(l)] += c[static_cast<std::size_t>(l - i)];
    for (std::int64_t l = n * M + 1; l <= deg; ++l)
        if (c[static_cast<std::size_t>(l)] != 0)
            throw ConsistencyError("box_partitions: generating-function division not exact");
    c.resize(static_cast<std::size_t>(n * M) + 1);
    for (auto x : c)
        if (x < 0) throw ConsistencyError("box_partitions: negative count");
    return c;
}

/// Level-run stream for a truncated geometric family: the eigenvalues
/// of either spectrum are (1-z)^n z^l with exactly countable
/// degeneracies, so the whole stream is walked level-by-level without
/// enumerating tuples. This is what makes majorization checks at
/// z -> 1 tractable (the tuple count at the decision depth is ~1e12).
class GeometricLevelStream final : public SpectrumStream {
public:
    GeometricLevelStream(Kind kind, double z, std::int64_t d, std::int64_t n,
                         double log_chi_tilde, double total_mass, double total_dimension)
        : SpectrumStream(kind, total_mass, total_dimension),
          log_z_(std::log(z)),
          base_log_(static_cast<double>(n) * std::log1p(-z)) {
        if (kind == Kind::Initial) {
            counts_int_ = bounded_compositions(n, d);
        } else {
            for (auto x : box_partitions(n, d - n)) counts_int_.push_back(static_cast<u128>(x));
            base_log_ += static_cast<double>(n * (n - 1) / 2) * log_z_ - log_chi_tilde;
        }
    }

private:
    std::optional<Run> generate() override {
        if (level_ >= static_cast<std::int64_t>(counts_int_.size())) return std::nullopt;
        const double v = std::exp(base_log_ + static_cast<double>(level_) * log_z_);
        const double c = static_cast<double>(counts_int_[static_cast<std::size_t>(level_)]);
        ++level_;
        return Run{v, c};
    }

    double log_z_;
    double base_log_;
    std::vector<u128> counts_int_;
    std::int64_t level_ = 0;
};

constexpr double kExactLimit = 4e6;

inline RunList materialize_initial(const SchmidtDistribution& dist, std::int64_t n) {
    RunList out;
    const auto lam = dist.lambdas();
    const auto d = static_cast<std::int64_t>(lam.size());
    std::vector<std::uint32_t> t(static_cast<std::size_t>(n));
    // Recursive multiset enumeration carrying the product and the
    // exact ordered-tuple multiplicity.
    auto rec = [&](auto&& self, std::int64_t pos, std::int64_t start, double prod,
                   std::uint64_t count) -> void {
        if (pos == n) {
            out.runs.push_back({prod, static_cast<double>(count)});
            return;
        }
        for (std::int64_t j = start; j < d; ++j) {
            // appending index j to a run of run_len equal entries scales the
            // ordered-tuple multiplicity by (pos+1)/run_len, exactly
            std::int64_t run_len = 1;
            std::int64_t p = pos - 1;
            while (p >= 0 && t[static_cast<std::size_t>(p)] == static_cast<std::uint32_t>(j)) {
                ++run_len;
                --p;
            }
            t[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(j);
            const std::uint64_t c2 = count * static_cast<std::uint64_t>(pos + 1) /
                                     static_cast<std::uint64_t>(run_len);
            self(self, pos + 1, j, prod * lam[static_cast<std::size_t>(j)], c2);
        }
    };
    rec(rec, 0, 0, 1.0, 1);
    out.sort_and_merge();
    return out;
}

inline RunList materialize_final(const SchmidtDistribution& dist, std::int64_t n,
                                 double inv_chi) {
    RunList out;
    const auto lam = dist.lambdas();
    const auto d = static_cast<std::int64_t>(lam.size());
    auto rec = [&](auto&& self, std::int64_t pos, std::int64_t start, double prod) -> void {
        if (pos == n) {
            out.runs.push_back({prod * inv_chi, 1.0});
            return;
        }
        for (std::int64_t j = start; j <= d - (n - pos); ++j)
            self(self, pos + 1, j + 1, prod * lam[static_cast<std::size_t>(j)]);
    };
    rec(rec, 0, 0, 1.0);
    out.sort_and_merge();
    return out;
}

/// Level arrays cost O(n d) 128-bit ints and must fit 128-bit counts.
inline bool analytic_geometric_applicable(const SchmidtDistribution& dist, std::int64_t n) {
    if (dist.family().kind != FamilyKind::Geometric) return false;
    const double d = static_cast<double>(dist.d());
    return n >= 1 && n <= dist.d() && static_cast<double>(n) * std::log(d) < 85.0 &&
           static_cast<double>(n) * d <= 2e6;
}

/// A uniform family collapses each spectrum to a single fully
/// degenerate run; counts may exceed 2^53 but the prefix arithmetic
/// stays exact where it matters (value * count telescopes to the mass).
inline RunList uniform_runs(std::int64_t d, std::int64_t n, bool final_kind) {
    RunList out;
    if (final_kind) {
        double count;
        try {
            count = static_cast<double>(binomial_u64(d, n));
        } catch (const ResourceError&) {
            count = std::exp(log_binomial(d, n));
        }
        out.runs.push_back({std::exp(-log_binomial(d, n)), count});
    } else {
        const double dim = std::pow(static_cast<double>(d), static_cast<double>(n));
        out.runs.push_back({1.0 / dim, dim});
    }
    return out;
}

}  // namespace detail

/// Eigenvalue stream of the n-coboson product state rho_i. Mode Auto
/// materializes when d^n <= 4e6, uses level runs for geometric
/// families, and falls back to lazy best-first enumeration otherwise.
[[nodiscard]] inline std::unique_ptr<SpectrumStream> initial_spectrum(
    const SchmidtDistribution& dist, std::int64_t n, StreamMode mode = StreamMode::Auto) {
    if (n < 1) throw DomainError("initial_spectrum: n must be >= 1");
    const double dim = std::pow(static_cast<double>(dist.d()), static_cast<double>(n));
    const double total = std::pow(dist.power_sum(1), static_cast<double>(n));
    using K = SpectrumStream::Kind;
    if (mode == StreamMode::Exact ||
        (mode == StreamMode::Auto && dim <= detail::kExactLimit)) {
        if (dim > detail::kExactLimit)
            throw ResourceError("initial_spectrum: d^n too large to materialize");
        return std::make_unique<detail::ExactStream>(K::Initial, total, dim,
                                                     detail::materialize_initial(dist, n));
    }
    const bool uniform = dist.family().kind == FamilyKind::Uniform;
    if (mode == StreamMode::Analytic ||
        (mode == StreamMode::Auto &&
         (uniform || detail::analytic_geometric_applicable(dist, n)))) {
        if (uniform)
            return std::make_unique<detail::ExactStream>(
                K::Initial, total, dim, detail::uniform_runs(dist.d(), n, false));
        if (!detail::analytic_geometric_applicable(dist, n))
            throw DomainError(
                "initial_spectrum: analytic mode needs a geometric or uniform family");
        return std::make_unique<detail::GeometricLevelStream>(
            K::Initial, dist.family().param, dist.d(), n, 0.0, total, dim);
    }
    return std::make_unique<detail::LazyProductStream>(K::Initial, dist, n, 1.0, total, dim);
}

/// Eigenvalue stream of the n-coboson condensate rho_f, normalized by
/// chi_tilde_n; requires n <= d.
[[nodiscard]] inline std::unique_ptr<SpectrumStream> final_spectrum(
    const SchmidtDistribution& dist, std::int64_t n, const ChiSequence& chi,
    StreamMode mode = StreamMode::Auto) {
    if (n < 1) throw DomainError("final_spectrum: n must be >= 1");
    if (n > dist.d())
        throw PauliBlockedError("final_spectrum: no n-coboson state beyond d modes");
    const LogReal ct = chi.chi_tilde(n);
    if (ct.is_zero()) throw PauliBlockedError("final_spectrum: chi_tilde_n = 0");
    const double dim = std::exp(log_binomial(dist.d(), n));
    using K = SpectrumStream::Kind;
    if (mode == StreamMode::Exact ||
        (mode == StreamMode::Auto && dim <= detail::kExactLimit)) {
        if (dim > detail::kExactLimit)
            throw ResourceError("final_spectrum: C(d,n) too large to materialize");
        const double inv_chi = std::exp(-ct.log_abs());
        return std::make_unique<detail::ExactStream>(K::Final, 1.0, dim,
                                                     detail::materialize_final(dist, n, inv_chi));
    }
    const bool uniform = dist.family().kind == FamilyKind::Uniform;
    if (mode == StreamMode::Analytic ||
        (mode == StreamMode::Auto &&
         (uniform || detail::analytic_geometric_applicable(dist, n)))) {
        if (uniform)
            return std::make_unique<detail::ExactStream>(
                K::Final, 1.0, dim, detail::uniform_runs(dist.d(), n, true));
        if (!detail::analytic_geometric_applicable(dist, n))
            throw DomainError(
                "final_spectrum: analytic mode needs a geometric or uniform family");
        return std::make_unique<detail::GeometricLevelStream>(
            K::Final, dist.family().param, dist.d(), n, ct.log_abs(), 1.0, dim);
    }
    return std::make_unique<detail::LazyProductStream>(K::Final, dist, n,
                                                       std::exp(-ct.log_abs()), 1.0, dim);
}

}  // namespace coboson
