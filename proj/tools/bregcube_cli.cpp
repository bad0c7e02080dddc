// bregcube: verification sweeps and experiments for directed noise operators,
// Bregman cube metrics, gap instances, and shattering, with reproducible
// seeds and machine-readable (json/csv) reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bregcube/bregman.hpp"
#include "bregcube/cube_fn.hpp"
#include "bregcube/instances.hpp"
#include "bregcube/noise.hpp"
#include "bregcube/shatter.hpp"

using json = nlohmann::ordered_json;
using namespace bregcube;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

struct Report {
    std::string experiment;
    json params = json::object();
    std::uint64_t seed = 0;
    std::string status = "pass";  // pass | violation | not-applicable | error
    json metrics = json::object();
    json violations = json::array();
    json rows = json::array();  // per-trial/grid-cell rows (csv body)

    void add_violation(const std::string& what, const json& witness) {
        status = "violation";
        violations.push_back({{"check", what}, {"witness", witness}});
    }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string to_csv(const Report& rep) {
    std::ostringstream os;
    if (rep.rows.empty()) return "";
    std::vector<std::string> keys;
    for (auto it = rep.rows[0].begin(); it != rep.rows[0].end(); ++it) keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_escape(keys[i]);
    os << "\n";
    for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i) os << ",";
            const auto& v = row.contains(keys[i]) ? row[keys[i]] : json();
            if (v.is_string())
                os << csv_escape(v.get<std::string>());
            else
                os << v.dump();
        }
        os << "\n";
    }
    return os.str();
}

int emit(Report& rep, const std::string& format, const std::string& output) {
    std::string text;
    if (format == "csv") {
        text = to_csv(rep);
    } else {
        json doc = {{"experiment", rep.experiment}, {"params", rep.params},
                    {"seed", rep.seed},            {"status", rep.status},
                    {"metrics", rep.metrics},      {"violations", rep.violations}};
        if (!rep.rows.empty()) doc["rows"] = rep.rows;
        text = doc.dump(2) + "\n";
    }
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot open output file: " << output << "\n";
            return kExitInvalid;
        }
        out << text;
    }
    return rep.status == "pass" || rep.status == "not-applicable" ? kExitPass : kExitViolation;
}

int thread_count() {
    if (const char* env = std::getenv("BREGCUBE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Runs fn(i) for i in [0, n) on up to thread_count() threads. Callers store
// results by index, so the outcome is schedule-independent.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const int threads = std::min<std::size_t>(thread_count(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futs;
    for (int t = 0; t < threads; ++t)
        futs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        }));
    for (auto& f : futs) f.get();
}

json witness_function(const CubeFunction& f, const json& extra) {
    json w = extra;
    w["dim"] = f.dim;
    w["values"] = f.values;
    return w;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

// ---------------------------------------------------------------- verify --

struct VerifyOptions {
    int d_max = 10;
    double p_min = 0.01, p_max = 0.2;
    int p_steps = 10;
    int trials = 200;
    std::uint64_t seed = 1;
    bool include_counterexample = false;
};

struct CellOutcome {
    json rows = json::array();
    json violations = json::array();
    long skipped = 0;
    long checks = 0;
};

void verify_fourier_cell(const VerifyOptions& opt, int d, double p, CellOutcome& out) {
    for (int t = 0; t < opt.trials; ++t) {
        const CubeFunction f = random_function(d, derive_stream(opt.seed, t, d * 100 + 1));
        const double n2 = norm(f, p, 2.0);
        const Spectrum spec = biased_fourier(f, p);
        double coeff_sq = 0.0;
        for (double c : spec.coeffs) coeff_sq += c * c;
        out.checks++;
        if (std::abs(coeff_sq - n2 * n2) > 1e-10 * n2 * n2)
            out.violations.push_back({{"check", "parseval"},
                                      {"witness", witness_function(f, {{"p", p}})}});
        const CubeFunction back = inverse_fourier(spec);
        double rt = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            rt = std::max(rt, std::abs(back.values[i] - f.values[i]));
            scale = std::max(scale, std::abs(f.values[i]));
        }
        out.checks++;
        if (rt > 1e-10 * std::max(1.0, scale))
            out.violations.push_back({{"check", "round-trip"},
                                      {"witness", witness_function(f, {{"p", p}})}});
    }
}

void verify_orthonormality(const VerifyOptions& opt, CellOutcome& out) {
    const int d = std::min(5, opt.d_max);
    for (double p : linspace(std::max(opt.p_min, 0.05), std::min(opt.p_max, 0.95), opt.p_steps)) {
        const std::size_t n = std::size_t{1} << d;
        for (Mask s = 0; s < n; ++s) {
            for (Mask t = 0; t < n; ++t) {
                double gram = 0.0;
                for (Mask x = 0; x < n; ++x)
                    gram += measure_weight(p, x, d) * chi(p, s, x) * chi(p, t, x);
                out.checks++;
                if (std::abs(gram - (s == t ? 1.0 : 0.0)) > 1e-10)
                    out.violations.push_back({{"check", "orthonormality"},
                                              {"witness", {{"p", p}, {"S", s}, {"T", t}}}});
            }
        }
    }
}

void verify_butterfly_naive(const VerifyOptions& opt, CellOutcome& out) {
    for (int d = 1; d <= std::min(8, opt.d_max); ++d) {
        for (double p : {0.2, 0.5, 0.73}) {
            const CubeFunction f = random_function(d, derive_stream(opt.seed, d, 7));
            const Spectrum fast = biased_fourier(f, p);
            const std::size_t n = f.size();
            for (Mask s = 0; s < n; ++s) {
                double naive = 0.0;
                for (Mask x = 0; x < n; ++x)
                    naive += measure_weight(p, x, d) * f.values[x] * chi(p, s, x);
                out.checks++;
                if (std::abs(fast.coeffs[s] - naive) > 1e-10)
                    out.violations.push_back({{"check", "butterfly-vs-naive"},
                                              {"witness", witness_function(f, {{"p", p}, {"S", s}})}});
            }
        }
    }
}

void verify_identities_cell(const VerifyOptions& opt, int d, double p, CellOutcome& out) {
    const int trials = std::max(1, opt.trials / 10);
    for (int t = 0; t < trials; ++t) {
        const CubeFunction f = random_function(d, derive_stream(opt.seed, t, d * 100 + 2));
        // decomposition over (p1, p2) = (3p, p) style pairs within range
        const double p2 = p / 2.0;
        const double p1 = std::min(p * 1.5, 1.0 - p2);
        out.checks++;
        if (verify_decomposition(f, {p1, p2}) > 1e-10)
            out.violations.push_back({{"check", "decomposition"},
                                      {"witness", witness_function(f, {{"p1", p1}, {"p2", p2}})}});
        out.checks++;
        if (transform_relation_residual(f, p) > 1e-10)
            out.violations.push_back({{"check", "transform-relation"},
                                      {"witness", witness_function(f, {{"p", p}})}});
        out.checks++;
        if (norm_identity_residual(f, p) > 1e-10)
            out.violations.push_back({{"check", "norm-identity"},
                                      {"witness", witness_function(f, {{"p", p}})}});
        // tau multiplicativity
        const CubeFunction twice = apply_tau(apply_tau(f, 0.5, p), 0.4, p);
        const CubeFunction once = apply_tau(f, 0.2, p);
        double dev = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            dev = std::max(dev, std::abs(twice.values[i] - once.values[i]));
        out.checks++;
        if (dev > 1e-10)
            out.violations.push_back({{"check", "tau-multiplicative"},
                                      {"witness", witness_function(f, {{"p", p}})}});
    }
}

void verify_measure_comparison(const VerifyOptions& opt, int d, double p, CellOutcome& out) {
    // kappa_p(x) <= kappa_{1/2}(x) on the lower half for p >= 1/2.
    const double ph = 0.5 + p / 2.0;
    const std::size_t n = std::size_t{1} << d;
    const double uniform = std::pow(0.5, d);
    for (Mask x = 0; x < n; ++x) {
        if (2 * hamming_weight(x) > d) continue;
        out.checks++;
        if (measure_weight(ph, x, d) > uniform * (1.0 + 1e-12))
            out.violations.push_back({{"check", "pointwise-measure"},
                                      {"witness", {{"p", ph}, {"x", x}, {"d", d}}}});
    }
    // ineq3 in norm form on random half-cube functions
    const CubeFunction fl =
        restrict_lower_half(random_function(d, derive_stream(opt.seed, d, p * 1e6)));
    const CubeFunction fu =
        restrict_upper_half(random_function(d, derive_stream(opt.seed, d, p * 1e6 + 1)));
    for (double delta : {1.2, 1.7, 2.0, 3.0}) {
        out.checks += 2;
        const double lo = std::pow(norm(fl, ph, delta), delta);
        const double hi = std::pow(norm(fl, 0.5, delta), delta);
        if (lo > hi + 1e-12)
            out.violations.push_back({{"check", "half-cube-measure-norm"},
                                      {"witness", witness_function(fl, {{"p", ph}, {"delta", delta}})}});
        const double lo_u = std::pow(norm(fu, 1.0 - ph, delta), delta);
        const double hi_u = std::pow(norm(fu, 0.5, delta), delta);
        if (lo_u > hi_u + 1e-12)
            out.violations.push_back({{"check", "half-cube-measure-norm-upper"},
                                      {"witness", witness_function(fu, {{"p", 1.0 - ph}, {"delta", delta}})}});
    }
}

void verify_hypercontractivity_cell(const VerifyOptions& opt, int d, double p, CellOutcome& out) {
    const int trials = std::max(1, opt.trials / 10);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_stream(opt.seed, t, d * 100 + 3);
        const bool indicator = t % 2 == 0;
        const double density = std::pow(0.5, 1 + t % std::max(1, d / 2));
        CubeFunction base = indicator ? random_indicator(d, density, s) : random_function(d, s);
        const CubeFunction fl = restrict_lower_half(base);
        const CubeFunction fu = restrict_upper_half(base);

        const std::vector<HypercontractivityCase> cases = {
            {HcVariant::keller, p, 0, 0, std::sqrt(std::min(p, 1.0 - p)), false},
            {HcVariant::biased_tau, p, 0, 0, 0, false},
            {HcVariant::biased_tau, p, 0, 0, 0, true},
            {HcVariant::half_cube_r, p, 0, 0, 0, false},
            {HcVariant::half_cube_r, p, 0, 0, 0, true},
            {HcVariant::asymptotic, p, 0, 0, 0, false},
            {HcVariant::general_r, 0, std::min(p * 1.5, 0.25), std::min(p / 2.0, 0.25), 0, false},
        };
        for (const auto& c : cases) {
            const bool upper_support = (c.variant == HcVariant::half_cube_r ||
                                        c.variant == HcVariant::asymptotic) && c.upper;
            const bool lower_support = ((c.variant == HcVariant::half_cube_r ||
                                         c.variant == HcVariant::asymptotic) && !c.upper) ||
                                       c.variant == HcVariant::general_r;
            const CubeFunction& f = upper_support ? fu : (lower_support ? fl : base);
            const HcResult r = hypercontractivity_gap(f, c);
            if (r.status == HcStatus::not_applicable) {
                out.skipped++;
                continue;
            }
            out.checks++;
            if (r.gap < -1e-12)
                out.violations.push_back(
                    {{"check", "hypercontractivity"},
                     {"witness", witness_function(f, {{"variant", int(c.variant)},
                                                      {"p", c.p},
                                                      {"p1", c.p1},
                                                      {"p2", c.p2},
                                                      {"upper", c.upper},
                                                      {"gap", r.gap}})}});
        }
    }
}

int cmd_verify(const VerifyOptions& opt, const std::string& format, const std::string& output) {
    Report rep;
    rep.experiment = "verify";
    rep.seed = opt.seed;
    rep.params = {{"d_max", opt.d_max}, {"p_min", opt.p_min},   {"p_max", opt.p_max},
                  {"p_steps", opt.p_steps}, {"trials", opt.trials},
                  {"include_counterexample", opt.include_counterexample}};

    const std::vector<double> ps = linspace(opt.p_min, opt.p_max, opt.p_steps);
    struct Cell {
        int d;
        double p;
    };
    std::vector<Cell> cells;
    for (int d = 1; d <= opt.d_max; ++d)
        for (double p : ps) cells.push_back({d, p});

    std::vector<CellOutcome> outcomes(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        verify_fourier_cell(opt, cells[i].d, cells[i].p, outcomes[i]);
        verify_identities_cell(opt, cells[i].d, cells[i].p, outcomes[i]);
        verify_measure_comparison(opt, cells[i].d, cells[i].p, outcomes[i]);
        verify_hypercontractivity_cell(opt, cells[i].d, cells[i].p, outcomes[i]);
    });

    CellOutcome globals;
    verify_orthonormality(opt, globals);
    verify_butterfly_naive(opt, globals);
    for (double p : linspace(0.001, 0.02, 20)) {
        globals.checks++;
        if (asymptotic_exponent_residual(p) > 2.0 * p * p)
            globals.violations.push_back(
                {{"check", "asymptotic-exponent-fit"}, {"witness", {{"p", p}}}});
    }

    long checks = globals.checks, skipped = globals.skipped;
    for (const auto& v : globals.violations) rep.violations.push_back(v);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        checks += outcomes[i].checks;
        skipped += outcomes[i].skipped;
        for (const auto& v : outcomes[i].violations) rep.violations.push_back(v);
        rep.rows.push_back({{"d", cells[i].d},
                            {"p", cells[i].p},
                            {"checks", outcomes[i].checks},
                            {"violations", outcomes[i].violations.size()},
                            {"skipped", outcomes[i].skipped}});
    }

    if (opt.include_counterexample) {
        // d = 1, f(0) = 0, f(1) = 1: ||R_{p,0} f||^2_{2,1/2} = (p^2+1)/2 beats
        // the exponent-2 bound, so the unrestricted symmetric analog fails.
        const CubeFunction f(1, std::vector<double>{0.0, 1.0});
        for (double p : {0.1, 0.5, 0.9}) {
            const HcResult r = hypercontractivity_gap(f, {HcVariant::naive_sym2, p});
            checks++;
            if (r.gap < -1e-12)
                rep.add_violation("counterexample-naive-exponent-2",
                                  witness_function(f, {{"p", p}, {"gap", r.gap}}));
        }
    }

    if (!rep.violations.empty()) rep.status = "violation";
    rep.metrics = {{"checks", checks},
                   {"skipped_keller_invalid", skipped},
                   {"violations", rep.violations.size()}};
    return emit(rep, format, output);
}

// ------------------------------------------------------------------- gap --

int cmd_gap(int d, int n, double eps, double mu, double perturb_mu, std::uint64_t seed,
            double band_lo, double band_hi, double sep_factor, double max_outside_frac,
            double max_sep_fail_frac, const std::string& instance_out,
            const std::string& format, const std::string& output) {
    Report rep;
    rep.experiment = "gap";
    rep.seed = seed;
    rep.params = {{"d", d},   {"n", n},
                  {"eps", eps}, {"mu", mu},
                  {"perturb_mu", perturb_mu}, {"band", {band_lo, band_hi}},
                  {"sep_factor", sep_factor}};

    GapInstanceConfig cfg;
    cfg.dim = d;
    cfg.n = n;
    cfg.eps = eps;
    cfg.mu = mu;
    cfg.perturb_mu = perturb_mu;
    cfg.seed = seed;
    const GapInstance inst = generate(cfg);

    if (!instance_out.empty()) {
        json doc = {{"config",
                     {{"dim", d}, {"n", n}, {"eps", eps}, {"mu", mu},
                      {"perturb_mu", perturb_mu}, {"seed", seed}}},
                    {"S", json::array()},
                    {"P", json::array()},
                    {"Q", json::array()}};
        for (int i = 0; i < n; ++i) {
            doc["S"].push_back(inst.S[i].to_hex());
            doc["P"].push_back(inst.P[i].to_hex());
            doc["Q"].push_back(inst.Q[i].to_hex());
        }
        std::ofstream out(instance_out);
        if (!out) {
            std::cerr << "cannot open instance output file: " << instance_out << "\n";
            return kExitInvalid;
        }
        out << doc.dump(2) << "\n";
    }

    const GapStatistics st = gap_statistics(inst);
    int outside = 0, sep_fail = 0;
    for (int i = 0; i < n; ++i) {
        rep.rows.push_back({{"index", i},
                            {"paired", st.paired[i]},
                            {"min_cross", st.min_cross[i]},
                            {"ratio", std::isfinite(st.ratio[i]) ? json(st.ratio[i]) : json()}});
        if (eps > 0.0) {
            const double r = st.paired[i] / (eps * d);
            if (r < band_lo || r > band_hi) ++outside;
        }
        if (st.min_cross[i] <= sep_factor * st.paired[i]) ++sep_fail;
    }
    const double frac_outside = double(outside) / n;
    const double frac_sep_fail = double(sep_fail) / n;

    rep.metrics = {{"paired_per_bit_mean", st.paired_per_bit_mean},
                   {"analytic_per_bit_mean", st.analytic_per_bit_mean},
                   {"per_bit_standard_error", st.per_bit_standard_error},
                   {"cross_per_bit_mean", st.cross_per_bit_mean},
                   {"min_ratio", std::isfinite(st.min_ratio) ? json(st.min_ratio) : json()},
                   {"frac_paired_outside_band", frac_outside},
                   {"frac_separation_failure", frac_sep_fail},
                   {"standing_assumption_mu_ge_inv_eps",
                    inst.config.satisfies_standing_assumption()},
                   {"concentration_regime", inst.config.in_concentration_regime()}};

    if (eps > 0.0) {
        const double mean_dev =
            std::abs(st.paired_per_bit_mean - st.analytic_per_bit_mean);
        if (mean_dev > 3.0 * st.per_bit_standard_error)
            rep.add_violation("paired-per-bit-mean",
                              {{"deviation", mean_dev}, {"se", st.per_bit_standard_error}});
        if (frac_outside > max_outside_frac)
            rep.add_violation("paired-distance-band", {{"fraction", frac_outside}});
        if (frac_sep_fail > max_sep_fail_frac)
            rep.add_violation("cross-separation", {{"fraction", frac_sep_fail}});
    }
    return emit(rep, format, output);
}

// --------------------------------------------------------------- shatter --

int cmd_shatter(int d, double eps, double mu, double c0, double c1, double a, int trials,
                const std::string& kind, int k, int m, std::uint64_t seed, bool alt_light,
                const std::string& format, const std::string& output) {
    Report rep;
    rep.experiment = "shatter";
    rep.seed = seed;
    rep.params = {{"d", d},  {"eps", eps}, {"mu", mu}, {"c0", c0}, {"c1", c1},
                  {"a", a},  {"trials", trials}, {"kind", kind}, {"k", k}, {"m", m}};

    ShatterParams params{eps, mu, c0, c1};
    params.validate();

    const int kA = std::max(1, int(std::round(-std::log2(a))));
    double worst_empirical_c1 = std::numeric_limits<double>::infinity();
    SplitMix64 rng(derive_stream(seed, 0, 0x73686174));
    for (int t = 0; t < trials; ++t) {
        CubeFunction A(d, 0.0);
        std::string family;
        if (t % 2 == 0) {
            // random subcube of codimension kA
            family = "subcube";
            Mask coords = 0;
            while (hamming_weight(coords) < kA)
                coords |= Mask{1} << (rng.next() % d);
            const Mask fixed = Mask(rng.next()) & coords;
            for (Mask x = 0; x < A.size(); ++x)
                if ((x & coords) == fixed) A.values[x] = 1.0;
        } else {
            family = "dense-random";
            A = random_indicator(d, a * 0.9, rng.next());
        }
        // keep |A| within the stated density bound
        std::size_t size = 0;
        for (double v : A.values) size += v == 1.0;
        if (double(size) > a * double(A.size())) {
            for (Mask x = 0; x < A.size() && double(size) > a * double(A.size()); ++x)
                if (A.values[x] == 1.0) {
                    A.values[x] = 0.0;
                    --size;
                }
        }
        const ShatterReport sr = shattering_report(A, params, a);
        if (sr.lhs > 0.0 && sr.lhs < 1.0) {
            const double empirical = (std::log(sr.lhs) / std::log(a) - 1.0) / eps;
            worst_empirical_c1 = std::min(worst_empirical_c1, empirical);
        }
        rep.rows.push_back({{"trial", t}, {"family", family}, {"lhs", sr.lhs},
                            {"rhs", sr.rhs}, {"holds", sr.holds}});
        if (!sr.holds)
            rep.add_violation("shattering-query", {{"trial", t}, {"family", family},
                                                   {"lhs", sr.lhs}, {"rhs", sr.rhs}});
    }

    PartitionKind pk = PartitionKind::bit_sample;
    int arg = k;
    if (kind == "random-balanced") {
        pk = PartitionKind::random_balanced;
        arg = m;
    } else if (kind == "seeded-hash") {
        pk = PartitionKind::seeded_hash;
        arg = m;
    } else if (kind != "bit-sample") {
        throw CLI::ValidationError("--kind must be bit-sample, random-balanced or seeded-hash");
    }
    const Partition part = make_partition(pk, d, arg, seed);
    const PartitionShatterReport pr = partition_shatter(part, params);
    if (!pr.no_light_cells && !pr.holds)
        rep.add_violation("partition-shatter", {{"violation_fraction", pr.violation_fraction},
                                                {"bound", pr.bound}});

    rep.metrics = {{"partition_holds", pr.holds},
                   {"partition_violation_fraction", pr.violation_fraction},
                   {"partition_threshold", pr.threshold},
                   {"partition_bound", pr.bound},
                   {"light_cells", pr.light_cell_count},
                   {"no_light_cells", pr.no_light_cells},
                   {"largest_holding_c1",
                    std::isfinite(worst_empirical_c1) ? json(worst_empirical_c1) : json()}};
    if (alt_light) {
        // the stricter 2^d/m light-cell threshold used by the table model
        const auto sizes = part.cell_sizes();
        const double limit = double(std::size_t{1} << d) / double(part.m);
        std::size_t strict = 0;
        for (auto s : sizes) strict += double(s) <= limit;
        rep.metrics["light_cells_alt_threshold"] = strict;
    }
    return emit(rep, format, output);
}

// ----------------------------------------------------------------- embed --

int cmd_embed(const std::string& gen_name, double a, double b, int d, int pm_trials,
              std::uint64_t seed, const std::string& format, const std::string& output) {
    Report rep;
    rep.experiment = "embed";
    rep.seed = seed;
    rep.params = {{"generator", gen_name}, {"a", a}, {"b", b}, {"d", d},
                  {"pm_trials", pm_trials}};

    const std::vector<std::string> names =
        gen_name == "all" ? generator_names() : std::vector<std::string>{gen_name};
    for (const std::string& name : names) {
        const Generator& gen = generator_by_name(name);
        const EmbeddingAnchors anchors = make_anchors(gen, a, b);
        const double residual = verify_embedding(gen, anchors, d, 10000, seed);
        const double tol = 1e-9 * std::max(1.0, anchors.c0 * d);
        rep.rows.push_back({{"generator", name}, {"c0", anchors.c0},
                            {"residual", residual}, {"tolerance", tol}});
        if (residual > tol)
            rep.add_violation("embedding-identity",
                              {{"generator", name}, {"residual", residual}});
    }

    // PM-to-ANN reduction sweep at mu = 2d+1.
    SplitMix64 rng(derive_stream(seed, 1, 0x706d));
    const int pm_d = std::min(d, 12);
    const std::uint64_t mask = (std::uint64_t{1} << pm_d) - 1;
    long inconsistent = 0;
    for (int t = 0; t < pm_trials; ++t) {
        std::vector<Mask> P(8);
        for (Mask& p : P) p = Mask(rng.next() & mask);
        const Mask q = Mask(rng.next() & mask);
        const PmCheck chk = pm_reduction_check(P, q, pm_d);
        if (!chk.consistent) {
            ++inconsistent;
            rep.add_violation("pm-reduction", {{"q", q}, {"P", P}});
        }
    }
    rep.metrics = {{"pm_inconsistent", inconsistent}, {"pm_trials", pm_trials}};
    return emit(rep, format, output);
}

// -------------------------------------------------------------------- mu --

int cmd_mu(const std::string& gen_name, double lo, double hi, int grid_n,
           const std::string& format, const std::string& output) {
    Report rep;
    rep.experiment = "mu";
    rep.params = {{"generator", gen_name}, {"interval", {lo, hi}}, {"grid_n", grid_n}};
    const Generator& gen = generator_by_name(gen_name);
    const double grid = asymmetry_grid(gen, lo, hi, grid_n);
    const double hess = asymmetry_hessian(gen, lo, hi);
    rep.metrics = {{"grid_mu", grid}, {"hessian_mu", hess}};
    if (grid > hess + 1e-9)
        rep.add_violation("grid-exceeds-hessian", {{"grid", grid}, {"hessian", hess}});
    return emit(rep, format, output);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed-hypercontractivity and Bregman-cube experiment driver"};
    app.require_subcommand(1);

    std::string format = "json", output;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", output, "output path (default stdout)");

    // verify
    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "operator identity and inequality sweeps");
    verify->fallthrough();
    verify->add_option("--d-max", vopt.d_max)->check(CLI::Range(1, kMaxExactDim));
    verify->add_option("--p-min", vopt.p_min)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    verify->add_option("--p-max", vopt.p_max)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    verify->add_option("--p-steps", vopt.p_steps)->check(CLI::PositiveNumber);
    verify->add_option("--trials", vopt.trials)->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopt.seed);
    verify->add_flag("--include-counterexample", vopt.include_counterexample,
                     "include the d=1 naive exponent-2 case (expected violation)");

    // gap
    int gd = 10000, gn = 100;
    double geps = 0.01, gmu = 100.0, gperturb_mu = -1.0;
    double band_lo = 1.0, band_hi = 3.0, sep_factor = 10.0;
    double max_outside = 0.01, max_sep_fail = 0.01;
    std::uint64_t gseed = 42;
    std::string instance_out;
    auto* gap = app.add_subcommand("gap", "hard gap-instance generation and statistics");
    gap->fallthrough();
    gap->add_option("--d", gd)->check(CLI::PositiveNumber);
    gap->add_option("--n", gn)->check(CLI::PositiveNumber);
    gap->add_option("--eps", geps)->check(CLI::Range(0.0, 1.0));
    gap->add_option("--mu", gmu);
    gap->add_option("--perturb-mu", gperturb_mu, "override the perturbation mu (mu' regime)");
    gap->add_option("--seed", gseed);
    gap->add_option("--band-lo", band_lo);
    gap->add_option("--band-hi", band_hi);
    gap->add_option("--sep-factor", sep_factor);
    gap->add_option("--max-outside-frac", max_outside);
    gap->add_option("--max-sep-fail-frac", max_sep_fail);
    gap->add_option("--instance-out", instance_out, "serialize the instance as JSON");

    // shatter
    int sd = 14, sk = 7, sm = 128, strials = 100;
    double seps = 0.05, smu = 20.0, sc0 = 0.01, sc1 = 0.01, sa = 1.0 / 16.0;
    std::uint64_t sseed = 7;
    std::string skind = "bit-sample";
    bool alt_light = false;
    auto* shatter = app.add_subcommand("shatter", "gamma heavy sets and partition shattering");
    shatter->fallthrough();
    shatter->add_option("--d", sd)->check(CLI::Range(1, kMaxExactDim));
    shatter->add_option("--eps", seps)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    shatter->add_option("--mu", smu);
    shatter->add_option("--c0", sc0);
    shatter->add_option("--c1", sc1);
    shatter->add_option("--a", sa)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    shatter->add_option("--trials", strials)->check(CLI::PositiveNumber);
    shatter->add_option("--kind", skind, "bit-sample | random-balanced | seeded-hash");
    shatter->add_option("--k", sk, "bit-sample coordinate count");
    shatter->add_option("--m", sm, "cell count for random-balanced/seeded-hash");
    shatter->add_option("--seed", sseed);
    shatter->add_flag("--alt-light-threshold", alt_light, "also report 2^d/m light cells");

    // embed
    std::string egen = "all";
    double ea = 0.2, eb = 0.7;
    int ed = 8, epm_trials = 10000;
    std::uint64_t eseed = 3;
    auto* embed = app.add_subcommand("embed", "pseudo-Hamming-cube embedding and PM reduction");
    embed->fallthrough();
    embed->add_option("--generator", egen, "generator name or 'all'");
    embed->add_option("--a", ea);
    embed->add_option("--b", eb);
    embed->add_option("--d", ed)->check(CLI::Range(1, kMaxExactDim));
    embed->add_option("--pm-trials", epm_trials)->check(CLI::PositiveNumber);
    embed->add_option("--seed", eseed);

    // mu
    std::string mgen = "itakura-saito";
    double mlo = 1.0, mhi = 4.0;
    int mgrid = 512;
    auto* mu = app.add_subcommand("mu", "asymmetry measure by grid search and Hessian ratio");
    mu->fallthrough();
    mu->add_option("--generator", mgen);
    mu->add_option("--lo", mlo);
    mu->add_option("--hi", mhi);
    mu->add_option("--grid-n", mgrid)->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (verify->parsed()) return cmd_verify(vopt, format, output);
        if (gap->parsed())
            return cmd_gap(gd, gn, geps, gmu, gperturb_mu, gseed, band_lo, band_hi, sep_factor,
                           max_outside, max_sep_fail, instance_out, format, output);
        if (shatter->parsed())
            return cmd_shatter(sd, seps, smu, sc0, sc1, sa, strials, skind, sk, sm, sseed,
                               alt_light, format, output);
        if (embed->parsed())
            return cmd_embed(egen, ea, eb, ed, epm_trials, eseed, format, output);
        if (mu->parsed()) return cmd_mu(mgen, mlo, mhi, mgrid, format, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
