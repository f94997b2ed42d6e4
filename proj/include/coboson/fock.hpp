// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "coboson/errors.hpp"
#include "coboson/schmidt.hpp"

namespace coboson {

/// Which species' creation string is written first in basis kets. Any
/// consistent choice yields identical scalars (norms, expectations);
/// amplitudes may differ by global signs. Exposed so tests can verify
/// that invariance.
enum class ModeOrdering { AB, BA };

/// Triplet-list operator over an explicit Fock basis.
struct SparseOperator {
    struct Entry {
        std::uint32_t row;
        std::uint32_t col;
        double amp;
    };

    std::int64_t dim = 0;
    std::vector<Entry> entries;

    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const {
        if (static_cast<std::int64_t>(x.size()) != dim)
            throw DomainError("SparseOperator: dimension mismatch");
        std::vector<double> y(x.size(), 0.0);
        for (const auto& e : entries) y[e.row] += e.amp * x[e.col];
        return y;
    }
};

/// Explicit two-species fermionic Fock space over d paired modes.
///
/// Basis states are bitmask pairs (mask_A, mask_B); the Full basis
/// enumerates all 4^d of them (kept to d <= 7), the Paired basis only
/// the 2^d states with mask_A = mask_B that the coboson operators reach
/// from the vacuum (d <= 12). Creation strings carry Jordan-Wigner
/// signs with one species' string written before the other's.
class FockSpace {
public:
    enum class Basis { Full, Paired };
    enum class Species { A, B };

    explicit FockSpace(std::int64_t d, Basis basis = Basis::Paired,
                       ModeOrdering ordering = ModeOrdering::AB)
        : d_(d), basis_(basis), ordering_(ordering) {
        if (d < 1) throw DomainError("FockSpace: d must be positive");
        if (basis == Basis::Full && d > 7)
            throw ResourceError("FockSpace: full basis limited to d <= 7 (4^d states)");
        if (d > 12) throw ResourceError("FockSpace: paired basis limited to d <= 12");
        dim_ = basis == Basis::Full ? (std::int64_t{1} << (2 * d)) : (std::int64_t{1} << d);
    }

    [[nodiscard]] std::int64_t d() const { return d_; }
    [[nodiscard]] std::int64_t dimension() const { return dim_; }
    [[nodiscard]] Basis basis() const { return basis_; }

    [[nodiscard]] std::vector<double> vacuum() const {
        std::vector<double> v(static_cast<std::size_t>(dim_), 0.0);
        v[0] = 1.0;
        return v;
    }

    /// Single-mode creation operator; Full basis only (it leaves the
    /// paired sector).
    [[nodiscard]] SparseOperator creation(Species sp, std::int64_t mode) const {
        return species_op(sp, mode, true);
    }

    [[nodiscard]] SparseOperator annihilation(Species sp, std::int64_t mode) const {
        return species_op(sp, mode, false);
    }

    /// c^dag = sum_n sqrt(lambda_n) a^dag_n b^dag_n over this basis.
    [[nodiscard]] SparseOperator coboson_creation(const SchmidtDistribution& dist) const {
        check_dist(dist);
        SparseOperator op{dim_, {}};
        for (std::int64_t idx = 0; idx < dim_; ++idx) {
            const auto [ma, mb] = unpack(idx);
            for (std::int64_t n = 0; n < dist.d(); ++n) {
                const std::uint32_t bit = 1u << n;
                if ((ma & bit) || (mb & bit)) continue;
                // b^dag_n acts first on (ma, mb), then a^dag_n on (ma, mb|bit)
                const double s = sign_b(ma, mb, n) * sign_a(ma, mb | bit, n);
                const std::int64_t row = pack(ma | bit, mb | bit);
                op.entries.push_back({static_cast<std::uint32_t>(row),
                                      static_cast<std::uint32_t>(idx),
                                      s * std::sqrt(dist.lambda(n))});
            }
        }
        return op;
    }

    /// c = sum_n sqrt(lambda_n) b_n a_n.
    [[nodiscard]] SparseOperator coboson_annihilation(const SchmidtDistribution& dist) const {
        check_dist(dist);
        SparseOperator op{dim_, {}};
        for (std::int64_t idx = 0; idx < dim_; ++idx) {
            const auto [ma, mb] = unpack(idx);
            for (std::int64_t n = 0; n < dist.d(); ++n) {
                const std::uint32_t bit = 1u << n;
                if (!(ma & bit) || !(mb & bit)) continue;
                // a_n acts first on (ma, mb), then b_n on (ma^bit, mb)
                const double s = sign_a(ma, mb, n) * sign_b(ma ^ bit, mb, n);
                const std::int64_t row = pack(ma ^ bit, mb ^ bit);
                op.entries.push_back({static_cast<std::uint32_t>(row),
                                      static_cast<std::uint32_t>(idx),
                                      s * std::sqrt(dist.lambda(n))});
            }
        }
        return op;
    }

    /// Deviation Delta = sum_n lambda_n (a^dag_n a_n + b^dag_n b_n);
    /// diagonal in any occupation basis.
    [[nodiscard]] SparseOperator deviation(const SchmidtDistribution& dist) const {
        check_dist(dist);
        SparseOperator op{dim_, {}};
        for (std::int64_t idx = 0; idx < dim_; ++idx) {
            const auto [ma, mb] = unpack(idx);
            double v = 0.0;
            for (std::int64_t n = 0; n < dist.d(); ++n) {
                const std::uint32_t bit = 1u << n;
                if (ma & bit) v += dist.lambda(n);
                if (mb & bit) v += dist.lambda(n);
            }
            if (v != 0.0)
                op.entries.push_back({static_cast<std::uint32_t>(idx),
                                      static_cast<std::uint32_t>(idx), v});
        }
        return op;
    }

private:
    static int parity(std::uint32_t m) { return std::popcount(m) & 1 ? -1 : 1; }
    static std::uint32_t below(std::int64_t n) { return (1u << n) - 1u; }

    [[nodiscard]] double sign_a(std::uint32_t ma, std::uint32_t mb, std::int64_t n) const {
        const int local = parity(ma & below(n));
        const int prefix = ordering_ == ModeOrdering::AB ? 1 : parity(mb);
        return static_cast<double>(local * prefix);
    }

    [[nodiscard]] double sign_b(std::uint32_t ma, std::uint32_t mb, std::int64_t n) const {
        const int local = parity(mb & below(n));
        const int prefix = ordering_ == ModeOrdering::AB ? parity(ma) : 1;
        return static_cast<double>(local * prefix);
    }

    [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> unpack(std::int64_t idx) const {
        const auto u = static_cast<std::uint32_t>(idx);
        if (basis_ == Basis::Paired) return {u, u};
        const std::uint32_t ma = u & below(d_);
        return {ma, u >> d_};
    }

    [[nodiscard]] std::int64_t pack(std::uint32_t ma, std::uint32_t mb) const {
        if (basis_ == Basis::Paired) {
            if (ma != mb) throw ConsistencyError("FockSpace: left the paired sector");
            return ma;
        }
        return ma | (static_cast<std::int64_t>(mb) << d_);
    }

    [[nodiscard]] SparseOperator species_op(Species sp, std::int64_t mode, bool create) const {
        if (basis_ != Basis::Full)
            throw DomainError("FockSpace: species operators need the full basis");
        if (mode < 0 || mode >= d_) throw DomainError("FockSpace: mode out of range");
        SparseOperator op{dim_, {}};
        const std::uint32_t bit = 1u << mode;
        for (std::int64_t idx = 0; idx < dim_; ++idx) {
            auto [ma, mb] = unpack(idx);
            const std::uint32_t m = sp == Species::A ? ma : mb;
            if (create == bool(m & bit)) continue;
            const double s =
                sp == Species::A ? sign_a(ma, mb, mode) : sign_b(ma, mb, mode);
            if (sp == Species::A) ma ^= bit; else mb ^= bit;
            op.entries.push_back({static_cast<std::uint32_t>(pack(ma, mb)),
                                  static_cast<std::uint32_t>(idx), s});
        }
        return op;
    }

    void check_dist(const SchmidtDistribution& dist) const {
        if (dist.d() > d_) throw DomainError("FockSpace: distribution has more modes than space");
    }

    std::int64_t d_;
    Basis basis_;
    ModeOrdering ordering_;
    std::int64_t dim_ = 0;
};

/// Paired-sector engine in the factored representation: the amplitude
/// of the basis state with occupied set S is r_S * sqrt(prod_{i in S}
/// lambda_i), and only the coefficient r_S is stored. Applying c^dag or
/// c keeps r_S inside the scalar field, so instantiating with an exact
/// rational type gives bit-exact chi values; the double instantiation
/// is the production oracle.
template <class Scalar>
class PairedSectorOracle {
public:
    using State = std::vector<Scalar>;  // indexed by occupation mask

    PairedSectorOracle(std::vector<Scalar> lambdas, ModeOrdering ordering = ModeOrdering::AB)
        : lam_(std::move(lambdas)), ordering_(ordering) {
        d_ = static_cast<std::int64_t>(lam_.size());
        if (d_ < 1) throw DomainError("PairedSectorOracle: no modes");
        if (d_ > 12) throw ResourceError("PairedSectorOracle: limited to d <= 12");
        const std::size_t dim = std::size_t{1} << d_;
        prod_.assign(dim, Scalar(1));
        for (std::size_t m = 1; m < dim; ++m) {
            const int low = std::countr_zero(m);
            prod_[m] = prod_[m & (m - 1)] * lam_[static_cast<std::size_t>(low)];
        }
    }

    [[nodiscard]] std::int64_t d() const { return d_; }
    [[nodiscard]] std::size_t dimension() const { return prod_.size(); }

    [[nodiscard]] State vacuum() const {
        State v(dimension(), Scalar(0));
        v[0] = Scalar(1);
        return v;
    }

    /// r_{S u {n}} += sign(S) r_S for every n not in S; the sqrt(lambda)
    /// amplitude factor is carried by the basis convention.
    [[nodiscard]] State apply_creation(const State& v) const {
        State out(dimension(), Scalar(0));
        for (std::size_t m = 0; m < v.size(); ++m) {
            if (v[m] == Scalar(0)) continue;
            const Scalar signed_r = creation_sign(m) ? -v[m] : v[m];
            for (std::int64_t n = 0; n < d_; ++n) {
                const std::size_t bit = std::size_t{1} << n;
                if (m & bit) continue;
                out[m | bit] += signed_r;
            }
        }
        return out;
    }

    /// r_{S \ {n}} += sign(S) lambda_n r_S for every n in S.
    [[nodiscard]] State apply_annihilation(const State& v) const {
        State out(dimension(), Scalar(0));
        for (std::size_t m = 0; m < v.size(); ++m) {
            if (v[m] == Scalar(0)) continue;
            const Scalar signed_r = annihilation_sign(m) ? -v[m] : v[m];
            for (std::int64_t n = 0; n < d_; ++n) {
                const std::size_t bit = std::size_t{1} << n;
                if (!(m & bit)) continue;
                out[m ^ bit] += signed_r * lam_[static_cast<std::size_t>(n)];
            }
        }
        return out;
    }

    [[nodiscard]] Scalar inner(const State& a, const State& b) const {
        Scalar acc(0);
        for (std::size_t m = 0; m < a.size(); ++m) {
            if (a[m] == Scalar(0) || b[m] == Scalar(0)) continue;
            acc += a[m] * b[m] * prod_[m];
        }
        return acc;
    }

    [[nodiscard]] Scalar norm2(const State& v) const { return inner(v, v); }

    /// Unnormalized (c^dag)^n |0>.
    [[nodiscard]] State raw_number_state(std::int64_t n) const {
        if (n < 0) throw DomainError("raw_number_state: n must be >= 0");
        State v = vacuum();
        for (std::int64_t k = 0; k < n; ++k) v = apply_creation(v);
        return v;
    }

    /// chi_n = ||(c^dag)^n |0>||^2 / n!
    [[nodiscard]] Scalar chi(std::int64_t n) const {
        Scalar c = norm2(raw_number_state(n));
        for (std::int64_t k = 2; k <= n; ++k) c = c / Scalar(static_cast<int>(k));
        return c;
    }

    /// <S| Delta |S> weight: 2 sum_{i in S} lambda_i.
    [[nodiscard]] Scalar deviation_weight(std::size_t mask) const {
        Scalar acc(0);
        for (std::int64_t n = 0; n < d_; ++n)
            if (mask & (std::size_t{1} << n)) acc += lam_[static_cast<std::size_t>(n)];
        return acc + acc;
    }

    [[nodiscard]] Scalar product(std::size_t mask) const { return prod_[mask]; }

private:
    [[nodiscard]] bool creation_sign(std::size_t mask) const {
        const int k = std::popcount(mask);
        return ordering_ == ModeOrdering::AB ? (k & 1) : !(k & 1);
    }
    [[nodiscard]] bool annihilation_sign(std::size_t mask) const {
        const int k = std::popcount(mask);
        return ordering_ == ModeOrdering::AB ? !(k & 1) : (k & 1);
    }

    std::vector<Scalar> lam_;
    ModeOrdering ordering_;
    std::int64_t d_ = 0;
    std::vector<Scalar> prod_;
};

/// (c^dag)^n |0> over the paired sector, normalized, with the exact
/// norm-derived chi_n.
struct NumberState {
    std::vector<double> amplitudes;  // over occupation masks
    double chi = 0.0;
};

[[nodiscard]] inline NumberState number_state(const SchmidtDistribution& dist, std::int64_t n,
                                              ModeOrdering ordering = ModeOrdering::AB) {
    PairedSectorOracle<double> eng({dist.lambdas().begin(), dist.lambdas().end()}, ordering);
    auto raw = eng.raw_number_state(n);
    const double nrm2 = eng.norm2(raw);
    if (nrm2 <= 0.0) throw PauliBlockedError("number_state: n cobosons do not fit in d modes");
    NumberState out;
    out.chi = nrm2 / std::exp(log_factorial(n));
    out.amplitudes.resize(raw.size(), 0.0);
    const double inv = 1.0 / std::sqrt(nrm2);
    for (std::size_t m = 0; m < raw.size(); ++m)
        out.amplitudes[m] = raw[m] * std::sqrt(eng.product(m)) * inv;
    return out;
}

/// Decomposition c|n> = alpha_n sqrt(n) |n-1> + |eps_n>, measured on the
/// explicit states: alpha_n is extracted by projection onto |n-1>, the
/// eps vector is formed with the norm-derived alpha, and the residual
/// overlap |<n-1|eps_n>| checks that both alphas agree.
struct AnnihilationReport {
    double alpha = 0.0;
    double eps_norm = 0.0;
    double orthogonality_residual = 0.0;
};

[[nodiscard]] inline AnnihilationReport verify_annihilation(const SchmidtDistribution& dist,
                                                            std::int64_t n,
                                                            ModeOrdering ordering =
                                                                ModeOrdering::AB) {
    if (n < 1) throw DomainError("verify_annihilation: n must be >= 1");
    PairedSectorOracle<double> eng({dist.lambdas().begin(), dist.lambdas().end()}, ordering);
    auto prev = eng.raw_number_state(n - 1);
    auto cur = eng.apply_creation(prev);
    const double n2_prev = eng.norm2(prev);
    const double n2_cur = eng.norm2(cur);
    if (n2_cur <= 0.0)
        throw PauliBlockedError("verify_annihilation: n cobosons do not fit in d modes");

    auto w = eng.apply_annihilation(cur);  // c |n>, unnormalized
    const double beta = eng.inner(prev, w) / std::sqrt(n2_prev * n2_cur);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    const double chi_ratio = (n2_cur / n2_prev) / static_cast<double>(n);  // chi_n/chi_{n-1}
    const double alpha_f = std::sqrt(chi_ratio);

    AnnihilationReport rep;
    rep.alpha = beta / sqrt_n;
    const double w2 = eng.norm2(w) / n2_cur;  // ||c|n>||^2
    rep.eps_norm = w2 - 2.0 * alpha_f * sqrt_n * beta + chi_ratio * static_cast<double>(n);
    rep.orthogonality_residual = std::abs(beta - alpha_f * sqrt_n);
    return rep;
}

/// <n| Delta |n> = <1 - [c, c^dag]>_n, from the explicit diagonal
/// operator; must equal 2 (1 - chi_{n+1}/chi_n).
[[nodiscard]] inline double commutator_expectation(const SchmidtDistribution& dist,
                                                   std::int64_t n,
                                                   ModeOrdering ordering = ModeOrdering::AB) {
    PairedSectorOracle<double> eng({dist.lambdas().begin(), dist.lambdas().end()}, ordering);
    auto v = eng.raw_number_state(n);
    const double n2 = eng.norm2(v);
    if (n2 <= 0.0)
        throw PauliBlockedError("commutator_expectation: n cobosons do not fit in d modes");
    double acc = 0.0;
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (v[m] == 0.0) continue;
        acc += v[m] * v[m] * eng.product(m) * eng.deviation_weight(m);
    }
    return acc / n2;
}

/// Convenience wrapper matching the paired-sector default.
[[nodiscard]] inline SparseOperator build_coboson_op(const SchmidtDistribution& dist,
                                                     ModeOrdering ordering = ModeOrdering::AB) {
    FockSpace fs(dist.d(), FockSpace::Basis::Paired, ordering);
    return fs.coboson_creation(dist);
}

}  // namespace coboson
