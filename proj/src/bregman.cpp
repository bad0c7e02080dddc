#include "bregcube/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bregcube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

const std::vector<Generator>& builtins() {
    static const std::vector<Generator> gens = {
        {"l2", -kInf, kInf, [](double x) { return 0.5 * x * x; },
         [](double x) { return x; }, [](double) { return 1.0; }},
        {"kl", 0.0, kInf, [](double x) { return xlogx(x); },
         [](double x) { return std::log(x) + 1.0; }, [](double x) { return 1.0 / x; }},
        {"itakura-saito", 0.0, kInf, [](double x) { return -std::log(x); },
         [](double x) { return -1.0 / x; }, [](double x) { return 1.0 / (x * x); }},
        {"exponential", -kInf, kInf, [](double x) { return std::exp(x); },
         [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }},
        {"bit-entropy", 0.0, 1.0, [](double x) { return xlogx(x) + xlogx(1.0 - x); },
         [](double x) { return std::log(x) - std::log(1.0 - x); },
         [](double x) { return 1.0 / (x * (1.0 - x)); }},
    };
    return gens;
}

void check_domain(const Generator& gen, double x, const char* what, int coord = -1) {
    if (!gen.in_domain(x)) {
        std::string msg = std::string(what) + " value " + std::to_string(x) +
                          " outside domain of generator " + gen.name;
        if (coord >= 0) msg += " at coordinate " + std::to_string(coord);
        throw std::domain_error(msg);
    }
}

}  // namespace

const Generator& generator_by_name(const std::string& name) {
    for (const Generator& g : builtins())
        if (g.name == name) return g;
    throw std::invalid_argument("unknown generator: " + name);
}

std::vector<std::string> generator_names() {
    std::vector<std::string> names;
    for (const Generator& g : builtins()) names.push_back(g.name);
    return names;
}

double divergence1(const Generator& gen, double x, double y) {
    check_domain(gen, x, "first argument");
    check_domain(gen, y, "second argument");
    return gen.phi(x) - gen.phi(y) - gen.dphi(y) * (x - y);
}

double divergence(const Generator& gen, const std::vector<double>& x,
                  const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("divergence: mismatched vector lengths");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        check_domain(gen, x[i], "first argument", static_cast<int>(i));
        check_domain(gen, y[i], "second argument", static_cast<int>(i));
        acc += divergence1(gen, x[i], y[i]);
    }
    return acc;
}

double asymmetry_grid(const Generator& gen, double l, double u, int grid_n) {
    if (!(l < u)) throw std::invalid_argument("asymmetry interval is degenerate");
    check_domain(gen, l, "interval endpoint");
    check_domain(gen, u, "interval endpoint");
    if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");

    std::vector<double> pts(grid_n);
    for (int i = 0; i < grid_n; ++i) pts[i] = l + (u - l) * i / (grid_n - 1);

    // Ratio in log space; skip x = y and vanishing denominators.
    double best = 0.0;  // log ratio, >= 0 attained by pair swapping
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            if (i == j) continue;
            const double dxy = divergence1(gen, pts[i], pts[j]);
            const double dyx = divergence1(gen, pts[j], pts[i]);
            if (dyx < 1e-300 || dxy <= 0.0) continue;
            best = std::max(best, std::log(dxy) - std::log(dyx));
        }
    }
    return std::exp(best);
}

double asymmetry_hessian(const Generator& gen, double l, double u, int grid_n) {
    if (!(l < u)) throw std::invalid_argument("asymmetry interval is degenerate");
    check_domain(gen, l, "interval endpoint");
    check_domain(gen, u, "interval endpoint");
    double lo = kInf, hi = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double x = l + (u - l) * i / (grid_n - 1);
        const double h = gen.d2phi(x);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    return hi / lo;
}

double cube_distance(const CubeMetricParams& params, Mask x, Mask y) {
    const int up = hamming_weight(static_cast<Mask>(~x & y));    // 0 -> 1 positions
    const int down = hamming_weight(static_cast<Mask>(x & ~y));  // 1 -> 0 positions
    return params.mu * up + down;
}

InducedCubeParams induced_cube_params(const Generator& gen, double a, double b) {
    if (a == b) throw std::invalid_argument("anchors must be distinct");
    check_domain(gen, a, "anchor a");
    check_domain(gen, b, "anchor b");
    double dba = divergence1(gen, b, a);
    double dab = divergence1(gen, a, b);
    if (dba > dab) {  // relabel so mu >= 1
        std::swap(a, b);
        std::swap(dba, dab);
    }
    return {dba, dab / dba, a, b};
}

EmbeddingAnchors make_anchors(const Generator& gen, double a, double b) {
    if (a == b) throw std::invalid_argument("anchors must be distinct");
    check_domain(gen, a, "anchor a");
    check_domain(gen, b, "anchor b");
    return {a, b, divergence1(gen, b, a) + divergence1(gen, a, b)};
}

std::vector<double> pseudo_cube_embed(const EmbeddingAnchors& anchors, Mask x, int d) {
    std::vector<double> v(2 * static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const bool one = (x >> i) & 1;
        v[2 * i] = one ? anchors.b : anchors.a;
        v[2 * i + 1] = one ? anchors.a : anchors.b;
    }
    return v;
}

double verify_embedding(const Generator& gen, const EmbeddingAnchors& anchors, int d,
                        int trials, std::uint64_t seed) {
    double worst = 0.0;
    auto residual = [&](Mask x, Mask y) {
        const double dv = divergence(gen, pseudo_cube_embed(anchors, x, d),
                                     pseudo_cube_embed(anchors, y, d));
        const double hd = hamming_weight(static_cast<Mask>(x ^ y));
        return std::abs(dv - anchors.c0 * hd);
    };
    if (d <= 12) {
        const Mask n = Mask{1} << d;
        for (Mask x = 0; x < n; ++x)
            for (Mask y = 0; y < n; ++y) worst = std::max(worst, residual(x, y));
    } else {
        std::mt19937_64 rng(seed);
        const std::uint64_t mask = d >= 32 ? ~std::uint64_t{0} : ((std::uint64_t{1} << d) - 1);
        for (int t = 0; t < trials; ++t) {
            const Mask x = static_cast<Mask>(rng() & mask);
            const Mask y = static_cast<Mask>(rng() & mask);
            worst = std::max(worst, residual(x, y));
        }
    }
    return worst;
}

bool dominates(Mask q, Mask p) { return (p & ~q) == 0; }

PmCheck pm_reduction_check(const std::vector<Mask>& P, Mask q, int d) {
    if (P.empty()) throw std::invalid_argument("pm_reduction_check: empty point set");
    const CubeMetricParams params{2.0 * d + 1.0, d};
    bool pm = false;
    double min_dist = kInf;
    for (Mask p : P) {
        pm = pm || dominates(q, p);
        min_dist = std::min(min_dist, cube_distance(params, q, p));
    }
    const bool ann = min_dist <= static_cast<double>(d);
    return {pm, ann, pm == ann};
}

}  // namespace bregcube
