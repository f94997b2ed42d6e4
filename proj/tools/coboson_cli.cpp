// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: quality tables, majorization verdicts, the
// heavy-tail counterexample report, Fock-oracle comparisons, parameter
// scans, and distribution-file generation.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "coboson/coboson.hpp"

namespace {

using namespace coboson;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitViolated = 3;
constexpr int kExitInconclusive = 4;

struct DistOptions {
    std::string family = "geometric";
    double z = 0.9;
    double s = 2.0;
    std::int64_t d = -1;  // -1: family default
    std::string file;
    double tail_threshold = 1e-12;
    bool renormalize = false;
    bool quiet = false;  // suppress advisory stderr notes (parallel scans)
};

void add_dist_options(CLI::App* cmd, DistOptions& o) {
    cmd->add_option("--family", o.family, "geometric|zeta|uniform|file")
        ->check(CLI::IsMember({"geometric", "zeta", "uniform", "file"}));
    cmd->add_option("--z", o.z, "geometric parameter z in (0,1)");
    cmd->add_option("--s", o.s, "zeta exponent s > 1");
    cmd->add_option("--d", o.d, "mode cutoff d");
    cmd->add_option("--file", o.file, "distribution JSON file");
    cmd->add_option("--tail-threshold", o.tail_threshold,
                    "geometric truncation target for the tail mass");
    cmd->add_flag("--renormalize", o.renormalize,
                  "fold tail_mass back in; family closed forms and fast paths "
                  "no longer apply");
}

SchmidtDistribution build_dist_raw(const DistOptions& o) {
    if (o.family == "file" || !o.file.empty()) {
        if (o.file.empty()) throw FormatError("--family file needs --file PATH");
        return read_distribution(o.file);
    }
    if (o.family == "geometric") {
        std::int64_t d = o.d;
        if (d < 0) {
            if (!(o.tail_threshold > 0.0 && o.tail_threshold <= 1e-6))
                throw DomainError("--tail-threshold must lie in (0, 1e-6]");
            d = static_cast<std::int64_t>(
                std::ceil(std::log(o.tail_threshold) / std::log(o.z)));
            d = std::clamp<std::int64_t>(d, 1, 5000000);
        }
        return SchmidtDistribution::geometric(o.z, d);
    }
    if (o.family == "zeta") {
        std::int64_t d = o.d;
        if (o.s < 1.2) {
            if (d < 0)
                throw DomainError(
                    "zeta with s < 1.2 has a heavy tail; an explicit --d is required");
            if (!o.quiet)
                std::cerr << "warning: zeta tail is heavy for s < 1.2; results describe "
                             "the truncation d="
                          << d << " plus certified analytic bounds\n";
        }
        if (d < 0) d = 100000;
        return SchmidtDistribution::zeta(o.s, d);
    }
    if (o.family == "uniform") {
        if (o.d < 1) throw DomainError("uniform family needs --d");
        return SchmidtDistribution::uniform(o.d);
    }
    throw DomainError("unknown family: " + o.family);
}

SchmidtDistribution build_dist(const DistOptions& o) {
    auto dist = build_dist_raw(o);
    return o.renormalize ? dist.renormalized() : dist;
}

struct NRange {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

NRange parse_n_range(const std::string& text) {
    NRange r;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoll(text);
        } else {
            r.lo = std::stoll(text.substr(0, dots));
            r.hi = std::stoll(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw FormatError("cannot parse n range: " + text);
    }
    if (r.lo < 1 || r.hi < r.lo || r.hi > 64)
        throw DomainError("n range must satisfy 1 <= lo <= hi <= 64");
    return r;
}

// "v" | "start:stop" (11 points) | "start:stop:step"
std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    std::vector<double> out;
    try {
        if (parts.size() == 1) {
            out.push_back(std::stod(parts[0]));
        } else if (parts.size() == 2 || parts.size() == 3) {
            const double start = std::stod(parts[0]);
            const double stop = std::stod(parts[1]);
            if (stop < start) throw FormatError("grid stop below start: " + text);
            const double step =
                parts.size() == 3 ? std::stod(parts[2]) : (stop - start) / 10.0;
            if (!(step > 0.0)) throw FormatError("grid step must be positive: " + text);
            const auto count =
                static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            for (std::int64_t i = 0; i < count; ++i)
                out.push_back(start + static_cast<double>(i) * step);
        } else {
            throw FormatError("grid must be v, start:stop, or start:stop:step");
        }
    } catch (const std::invalid_argument&) {
        throw FormatError("cannot parse grid: " + text);
    }
    if (out.empty()) throw DomainError("grid is empty");
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw FormatError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int cmd_quality(const DistOptions& dopt, const std::string& n_text,
                const std::string& format, const std::string& out_path) {
    const auto dist = build_dist(dopt);
    NRange range;
    if (n_text.empty()) {
        range.lo = 1;
        range.hi = std::min<std::int64_t>(dist.d(), 64);
    } else {
        range = parse_n_range(n_text);
        if (range.hi > dist.d()) {
            std::cerr << "warning: n range truncated to d=" << dist.d()
                      << " (Pauli blocking beyond)\n";
            range.hi = dist.d();
            range.lo = std::min(range.lo, range.hi);
        }
    }
    if (dist.tail_mass() > 1e-9)
        std::cerr << "note: tail_mass=" << format_double(dist.tail_mass())
                  << "; ratios describe the truncated state (--renormalize folds the "
                     "tail back in)\n";
    const auto chi = elementary_symmetric(dist, range.hi + 1);
    Output out(out_path);
    if (format == "csv") {
        out.stream() << kQualityCsvHeader << '\n';
        for (std::int64_t n = range.lo; n <= range.hi; ++n)
            out.stream() << quality_to_csv_row(make_quality_report(dist, chi, n)) << '\n';
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (std::int64_t n = range.lo; n <= range.hi; ++n)
            arr.push_back(
                quality_to_json(make_quality_report(dist, chi, n), dist.family().to_string()));
        out.stream() << arr.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_majorize(const DistOptions& dopt, std::int64_t n, std::int64_t max_prefixes,
                 double tol, const std::string& out_path, const std::string& proof_out,
                 std::int64_t proof_lmax) {
    const auto dist = build_dist(dopt);
    if (n > dist.d())
        throw PauliBlockedError("majorize: no final state, n exceeds d=" +
                                std::to_string(dist.d()));
    const auto verdict = check_majorization(dist, n, max_prefixes, tol);

    // companion necessary/sufficient tests
    const auto chi = elementary_symmetric(dist, n);
    const auto fe = first_element_test(dist, n, chi);
    std::cerr << "first_element: violated=" << (fe.violated ? "true" : "false")
              << " log_gap=" << format_double(fe.log_gap) << '\n';
    if (n >= 2) {
        const auto g = gamma_condition(dist, n);
        std::cerr << "gamma_condition: fails=" << (g.fails_majorization ? "true" : "false")
                  << " log_lhs=" << format_double(g.log_lhs)
                  << " log_rhs=" << format_double(g.log_rhs) << '\n';
    }
    const auto uf = uniform_final_test(dist, n);
    std::cerr << "uniform_final: sufficient=" << (uf.sufficient ? "true" : "false")
              << " mu=" << format_double(uf.mu) << '\n';

    if (!proof_out.empty()) {
        if (dist.family().kind != FamilyKind::Geometric)
            throw DomainError("--proof-out needs the geometric family");
        std::ofstream pf(proof_out);
        if (!pf) throw FormatError("cannot open proof output: " + proof_out);
        pf << kProofCsvHeader << '\n';
        for (const auto& row : geometric_prefix_proof(dist.family().param, n, proof_lmax))
            pf << proof_row_to_csv(row) << '\n';
    }

    Output out(out_path);
    out.stream() << verdict_to_json(verdict, dist.d(), tol).dump(2) << '\n';
    switch (verdict.outcome) {
        case MajorizationVerdict::Outcome::Majorized: return kExitOk;
        case MajorizationVerdict::Outcome::Violated: return kExitViolated;
        case MajorizationVerdict::Outcome::Inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int cmd_counterexample(double epsilon, std::int64_t n, std::int64_t d,
                       const std::string& format, const std::string& out_path) {
    if (!(epsilon > 0.0)) throw DomainError("counterexample: epsilon must be positive");
    if (n < 2) throw DomainError("counterexample: n must be >= 2");
    if (static_cast<double>(n) * epsilon > 1.0)
        std::cerr << "warning: n*epsilon > 1 leaves the expansion regime of the "
                     "first-order violation estimate\n";
    if (d < 0) d = 100000;
    const double s = 1.0 + epsilon;
    const auto dist = SchmidtDistribution::zeta(s, d);
    const double zs = riemann_zeta(s);
    const double p_exact = riemann_zeta(2.0 * s) / (zs * zs);
    const double pi2_6 = 1.6449340668482264;  // zeta(2)
    const double p_approx = pi2_6 * epsilon * epsilon;
    const auto chi = elementary_symmetric(dist, n);
    const auto fe = first_element_test(dist, n, chi);
    const auto g = gamma_condition(dist, n);
    const double f_lower_exact = 1.0 - static_cast<double>(n - 1) * p_exact;
    const double f_lower_frac = 1.0 - pi2_6 * static_cast<double>(n) * epsilon * epsilon;

    Output out(out_path);
    if (format == "csv") {
        out.stream() << "epsilon,n,truncation_d,purity_exact,purity_approx,"
                        "first_element_violated,first_element_log_gap,gamma_fails,"
                        "gamma_log_lhs,gamma_log_rhs,f_lower_exact,f_lower_frac\n";
        out.stream() << format_double(epsilon) << ',' << n << ',' << d << ','
                     << format_double(p_exact) << ',' << format_double(p_approx) << ','
                     << (fe.violated ? "true" : "false") << ','
                     << format_double(fe.log_gap) << ','
                     << (g.fails_majorization ? "true" : "false") << ','
                     << format_double(g.log_lhs) << ',' << format_double(g.log_rhs) << ','
                     << format_double(f_lower_exact) << ',' << format_double(f_lower_frac)
                     << '\n';
    } else {
        nlohmann::json j;
        j["epsilon"] = epsilon;
        j["n"] = n;
        j["truncation_d"] = d;
        j["purity_exact"] = p_exact;
        j["purity_approx"] = p_approx;
        j["first_element_violated"] = fe.violated;
        j["first_element_log_gap"] = fe.log_gap;
        j["gamma_fails"] = g.fails_majorization;
        j["gamma_log_lhs"] = g.log_lhs;
        j["gamma_log_rhs"] = g.log_rhs;
        j["f_lower_exact"] = f_lower_exact;
        j["f_lower_frac"] = f_lower_frac;
        out.stream() << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_oracle(std::int64_t d, std::int64_t n, std::int64_t trials, std::uint64_t seed,
               const std::string& out_path) {
    if (d < 1 || d > 12) throw DomainError("oracle: d must lie in [1, 12]");
    if (n < 1 || n > d) throw DomainError("oracle: n must lie in [1, d]");
    if (trials < 1) throw DomainError("oracle: trials must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 1.0);

    Output out(out_path);
    out.stream() << "quantity,formula,oracle,abs_diff\n";
    double worst = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::vector<double> w(static_cast<std::size_t>(d));
        for (auto& x : w) x = unif(rng);
        const auto dist = SchmidtDistribution::from_weights(w);
        const auto chi = elementary_symmetric(dist, n + 1);
        const auto tag = [&](const char* q) {
            std::ostringstream os;
            os << q << "[trial=" << t << ",n=" << n << "]";
            return os.str();
        };
        const auto emit = [&](const std::string& q, double formula, double oracle) {
            const double diff = std::abs(formula - oracle);
            worst = std::max(worst, diff);
            out.stream() << q << ',' << format_double(formula) << ','
                         << format_double(oracle) << ',' << format_double(diff) << '\n';
        };

        emit(tag("chi"), chi.chi(n).value(), number_state(dist, n).chi);
        const auto ann = verify_annihilation(dist, n);
        emit(tag("eps_norm"), epsilon_norm(chi, n), ann.eps_norm);
        emit(tag("alpha"), std::sqrt(f_ratio(chi, n)), ann.alpha);
        emit(tag("departure"), departure_expectation(chi, n),
             commutator_expectation(dist, n));
        emit(tag("orthogonality"), 0.0, ann.orthogonality_residual);
    }
    std::cerr << "worst |difference| = " << format_double(worst) << '\n';
    return worst > 1e-8 ? kExitMismatch : kExitOk;
}

struct ScanRow {
    std::string text;
};

int cmd_scan(const std::string& family, const std::string& grid_text, std::int64_t n,
             std::int64_t d_override, double tail_threshold, std::int64_t max_prefixes,
             double tol, std::int64_t jobs, const std::string& format,
             const std::string& out_path) {
    if (family != "geometric" && family != "zeta")
        throw DomainError("scan: family must be geometric or zeta");
    const auto grid = parse_grid(grid_text);
    if (n < 1 || n > 64) throw DomainError("scan: n must lie in [1, 64]");

    std::vector<ScanRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            DistOptions o;
            o.family = family;
            o.z = grid[i];
            o.s = grid[i];
            o.d = d_override;
            o.tail_threshold = tail_threshold;
            o.quiet = true;
            if (family == "zeta" && grid[i] < 1.2 && d_override < 0) o.d = 100000;
            const auto dist = build_dist(o);
            const std::int64_t nn = std::min<std::int64_t>(n, dist.d());
            const auto chi = elementary_symmetric(dist, nn + 1);
            const auto q = make_quality_report(dist, chi, nn);
            const auto verdict = check_majorization(dist, nn, max_prefixes, tol);
            std::ostringstream os;
            if (format == "csv") {
                os << family << ',' << format_double(grid[i]) << ',' << nn << ','
                   << dist.d() << ',' << format_double(dist.tail_mass()) << ','
                   << format_double(dist.purity()) << ',' << format_double(q.f_ratio) << ','
                   << format_double(q.lower_bound) << ',' << format_double(q.upper_bound)
                   << ',' << format_double(q.series_approx) << ',' << verdict.outcome_name();
            } else {
                nlohmann::json j = quality_to_json(q, dist.family().to_string());
                j["param"] = grid[i];
                j["d"] = dist.d();
                j["tail_mass"] = dist.tail_mass();
                j["purity"] = dist.purity();
                j["majorize_verdict"] = verdict.outcome_name();
                os << j.dump();
            }
            rows[i].text = os.str();
        }
    };

    std::int64_t nthreads = jobs > 0 ? jobs : std::thread::hardware_concurrency();
    nthreads = std::clamp<std::int64_t>(nthreads, 1, static_cast<std::int64_t>(grid.size()));
    {
        std::vector<std::thread> pool;
        for (std::int64_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Output out(out_path);
    if (format == "csv") {
        out.stream() << "family,param,n,d,tail_mass,purity,f_ratio,lower,upper,series,"
                        "majorize_verdict\n";
        for (const auto& r : rows) out.stream() << r.text << '\n';
    } else {
        out.stream() << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.stream() << rows[i].text << (i + 1 < rows.size() ? ",\n" : "\n");
        out.stream() << "]\n";
    }
    return kExitOk;
}

int cmd_family(const DistOptions& dopt, const std::string& out_path) {
    const auto dist = build_dist(dopt);
    if (out_path.empty()) {
        std::cout << distribution_to_json(dist).dump(2) << '\n';
    } else {
        write_distribution(dist, out_path);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coboson: composite-boson quality and LOCC-condensability analysis"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out_path;
    double tol = 1e-12;
    std::uint64_t seed = 12345;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--tol", tol, "majorization prefix tolerance");
    app.add_option("--seed", seed, "RNG seed for random-distribution trials");

    DistOptions dq;
    std::string n_text = "1..16";
    auto* quality = app.add_subcommand("quality", "per-n bosonic quality indicators");
    add_dist_options(quality, dq);
    quality->add_option("--n", n_text, "n or lo..hi");

    DistOptions dm;
    std::int64_t maj_n = 2;
    std::int64_t max_prefixes = 1000000;
    std::string proof_out;
    std::int64_t proof_lmax = 64;
    auto* majorize = app.add_subcommand("majorize", "LOCC condensation verdict");
    add_dist_options(majorize, dm);
    majorize->add_option("--n", maj_n, "coboson count")->required();
    majorize->add_option("--max-prefixes", max_prefixes, "stream step budget");
    majorize->add_option("--proof-out", proof_out, "write geometric proof table CSV here");
    majorize->add_option("--proof-lmax", proof_lmax, "levels in the proof table");

    double ce_eps = 0.02;
    std::int64_t ce_n = 20;
    std::int64_t ce_d = -1;
    auto* counterexample =
        app.add_subcommand("counterexample", "high entanglement without majorization");
    counterexample->add_option("--epsilon", ce_eps, "zeta exponent offset")->required();
    counterexample->add_option("--n", ce_n, "coboson count")->required();
    counterexample->add_option("--d", ce_d, "truncation cutoff (default 1e5)");

    std::int64_t or_d = 4, or_n = 2, or_trials = 50;
    auto* oracle = app.add_subcommand("oracle", "Fock-space oracle comparison table");
    oracle->add_option("--d", or_d, "modes (<= 12)");
    oracle->add_option("--n", or_n, "coboson count");
    oracle->add_option("--trials", or_trials, "random distributions to test");

    std::string scan_family = "geometric";
    std::string scan_z, scan_s;
    std::int64_t scan_n = 4;
    std::int64_t scan_d = -1;
    double scan_tail = 1e-12;
    std::int64_t scan_prefixes = 100000;
    std::int64_t jobs = 0;
    auto* scan = app.add_subcommand("scan", "parameter sweep with plot-ready output");
    scan->add_option("--family", scan_family, "geometric|zeta")
        ->check(CLI::IsMember({"geometric", "zeta"}));
    scan->add_option("--z", scan_z, "z grid: v | lo:hi | lo:hi:step");
    scan->add_option("--s", scan_s, "s grid: v | lo:hi | lo:hi:step");
    scan->add_option("--n", scan_n, "coboson count");
    scan->add_option("--d", scan_d, "mode cutoff override");
    scan->add_option("--tail-threshold", scan_tail, "geometric truncation target");
    scan->add_option("--max-prefixes", scan_prefixes, "majorization step budget per point");
    scan->add_option("--jobs", jobs, "worker threads (default: hardware)");

    DistOptions df;
    auto* family = app.add_subcommand("family", "write a distribution JSON file");
    add_dist_options(family, df);

    CLI11_PARSE(app, argc, argv);

    try {
        if (quality->parsed()) return cmd_quality(dq, n_text, format, out_path);
        if (majorize->parsed())
            return cmd_majorize(dm, maj_n, max_prefixes, tol, out_path, proof_out, proof_lmax);
        if (counterexample->parsed())
            return cmd_counterexample(ce_eps, ce_n, ce_d, format, out_path);
        if (oracle->parsed()) return cmd_oracle(or_d, or_n, or_trials, seed, out_path);
        if (scan->parsed()) {
            const std::string grid = scan_family == "geometric" ? scan_z : scan_s;
            if (grid.empty())
                throw DomainError("scan: provide --z for geometric or --s for zeta");
            return cmd_scan(scan_family, grid, scan_n, scan_d, scan_tail, scan_prefixes, tol,
                            jobs, format, out_path);
        }
        if (family->parsed()) return cmd_family(df, out_path);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitOk;
}
