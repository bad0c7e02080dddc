#include "bregcube/shatter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bregcube/noise.hpp"

namespace bregcube {

namespace {

void check_indicator(const CubeFunction& A) {
    for (double v : A.values)
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("gamma computation requires a 0/1-valued cell indicator");
}

std::size_t indicator_size(const CubeFunction& A) {
    std::size_t c = 0;
    for (double v : A.values) c += (v == 1.0);
    return c;
}

}  // namespace

void ShatterParams::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("shatter: eps must be in (0,1)");
    if (!(mu >= 1.0)) throw std::invalid_argument("shatter: mu must be >= 1");
    if (eps / mu > 1.0) throw std::invalid_argument("shatter: eps/mu must be a probability");
    if (!(c0 > 0.0 && c0 < 1.0 && c1 > 0.0 && c1 < 1.0))
        throw std::invalid_argument("shatter: constants c0, c1 must lie in (0,1)");
}

void Partition::validate() const {
    if (dim < 0 || dim > kMaxExactDim) throw std::invalid_argument("partition: bad dimension");
    if (m < 1 || std::size_t(m) > (std::size_t{1} << dim))
        throw std::invalid_argument("partition: cell count must be in [1, 2^d]");
    if (cell_of.size() != (std::size_t{1} << dim))
        throw std::invalid_argument("partition: cell_of must have length 2^d");
    for (std::uint32_t c : cell_of)
        if (c >= std::uint32_t(m)) throw std::invalid_argument("partition: cell id out of range");
}

std::vector<std::size_t> Partition::cell_sizes() const {
    std::vector<std::size_t> sizes(m, 0);
    for (std::uint32_t c : cell_of) ++sizes[c];
    return sizes;
}

std::vector<int> Partition::light_cells() const {
    const std::size_t n = std::size_t{1} << dim;
    const double limit = double(n) / std::sqrt(double(m));
    std::vector<int> light;
    const auto sizes = cell_sizes();
    // A cell covering the whole cube is never light (relevant only at m = 1).
    for (int i = 0; i < m; ++i)
        if (double(sizes[i]) <= limit && sizes[i] < n) light.push_back(i);
    return light;
}

CubeFunction gamma_all(const CubeFunction& A, const ShatterParams& params) {
    params.validate();
    check_indicator(A);
    CubeFunction g = apply_asymmetric(A, {params.eps, params.eps / params.mu});
    // Exact tensor operator keeps values in [0,1]; clamp rounding dust.
    for (double& v : g.values) v = std::clamp(v, 0.0, 1.0);
    return g;
}

std::vector<Mask> heavy_set(const CubeFunction& A, const ShatterParams& params, double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("heavy_set: a must be in (0,1)");
    if (double(indicator_size(A)) > a * double(A.size()))
        throw std::invalid_argument("heavy_set: |A| exceeds a 2^d");
    const CubeFunction g = gamma_all(A, params);
    const double threshold = std::pow(a, params.c0 * params.eps);
    std::vector<Mask> B;
    for (Mask y = 0; y < g.size(); ++y)
        if (2 * hamming_weight(y) <= g.dim && g.values[y] >= threshold) B.push_back(y);
    return B;
}

ShatterReport shattering_report(const CubeFunction& A, const ShatterParams& params, double a) {
    const std::vector<Mask> B = heavy_set(A, params, a);
    ShatterReport rep;
    rep.heavy_count = B.size();
    rep.lhs = double(B.size()) / double(A.size());
    rep.rhs = std::pow(a, 1.0 + params.c1 * params.eps);
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

PartitionShatterReport partition_shatter(const Partition& part, const ShatterParams& params) {
    part.validate();
    params.validate();
    const auto light = part.light_cells();
    PartitionShatterReport rep{};
    rep.light_cell_count = light.size();
    rep.threshold = std::pow(double(part.m), -params.c0 * params.eps / 2.0);
    rep.bound = std::pow(double(part.m), -params.c1 * params.eps / 2.0);
    if (light.empty()) {
        rep.no_light_cells = true;
        rep.holds = true;
        return rep;
    }

    const std::size_t n = std::size_t{1} << part.dim;
    std::vector<double> max_gamma(n, 0.0);
    for (int cell : light) {
        CubeFunction ind(part.dim, 0.0);
        for (Mask x = 0; x < n; ++x)
            if (part.cell_of[x] == std::uint32_t(cell)) ind.values[x] = 1.0;
        const CubeFunction g = gamma_all(ind, params);
        for (Mask y = 0; y < n; ++y) max_gamma[y] = std::max(max_gamma[y], g.values[y]);
    }

    std::size_t lower = 0, violating = 0;
    for (Mask y = 0; y < n; ++y) {
        if (2 * hamming_weight(y) > part.dim) continue;
        ++lower;
        if (max_gamma[y] >= rep.threshold) ++violating;
    }
    rep.violation_fraction = double(violating) / double(lower);
    rep.holds = rep.violation_fraction < rep.bound;
    return rep;
}

Partition make_partition(PartitionKind kind, int d, int k_or_m, std::uint64_t seed) {
    Partition part;
    part.dim = d;
    const std::size_t n = std::size_t{1} << d;
    part.cell_of.resize(n);
    switch (kind) {
        case PartitionKind::bit_sample: {
            const int k = k_or_m;
            if (k < 0 || k > d) throw std::invalid_argument("bit-sample: k must be in [0, d]");
            part.m = 1 << k;
            const Mask mask = Mask((std::uint64_t{1} << k) - 1);
            for (Mask x = 0; x < n; ++x) part.cell_of[x] = x & mask;
            break;
        }
        case PartitionKind::random_balanced: {
            part.m = k_or_m;
            if (part.m < 1 || std::size_t(part.m) > n)
                throw std::invalid_argument("random-balanced: m must be in [1, 2^d]");
            std::vector<Mask> order(n);
            std::iota(order.begin(), order.end(), Mask{0});
            SplitMix64 rng(derive_stream(seed, 0, 0x70617274));  // "part"
            for (std::size_t i = n - 1; i > 0; --i)
                std::swap(order[i], order[rng.next() % (i + 1)]);
            for (std::size_t i = 0; i < n; ++i) part.cell_of[order[i]] = i % part.m;
            break;
        }
        case PartitionKind::seeded_hash: {
            part.m = k_or_m;
            if (part.m < 1 || std::size_t(part.m) > n)
                throw std::invalid_argument("seeded-hash: m must be in [1, 2^d]");
            for (Mask x = 0; x < n; ++x)
                part.cell_of[x] = std::uint32_t(derive_stream(seed, x, 0x68617368) % part.m);
            break;
        }
    }
    part.validate();
    return part;
}

}  // namespace bregcube
