#include "bregcube/cube_fn.hpp"

#include "bregcube/bitvec.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bregcube {

namespace {

std::size_t checked_size(int d) {
    if (d < 0 || d > kMaxExactDim)
        throw std::invalid_argument("cube dimension out of range [0, " +
                                    std::to_string(kMaxExactDim) + "]: " + std::to_string(d));
    return std::size_t{1} << d;
}

}  // namespace

CubeFunction::CubeFunction(int d, double fill) : dim(d), values(checked_size(d), fill) {}

CubeFunction::CubeFunction(int d, std::vector<double> v) : dim(d), values(std::move(v)) {
    if (values.size() != checked_size(d))
        throw std::invalid_argument("CubeFunction: values length must be 2^dim");
}

CubeFunction CubeFunction::indicator(int d, const std::vector<Mask>& points) {
    CubeFunction f(d, 0.0);
    for (Mask x : points) f.values.at(x) = 1.0;
    return f;
}

int hamming_weight(Mask x) { return std::popcount(x); }

void check_bias(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("bias p must lie in (0,1), got " + std::to_string(p));
}

double measure_weight(double p, Mask x, int d) {
    check_bias(p);
    if (d < 0 || (d < 32 && x >= (Mask{1} << d)))
        throw std::invalid_argument("point mask out of range for dimension");
    const int h = hamming_weight(x);
    return std::pow(p, h) * std::pow(1.0 - p, d - h);
}

double expectation(const CubeFunction& f, double p) {
    check_bias(p);
    double acc = 0.0;
    for (Mask x = 0; x < f.size(); ++x)
        acc += measure_weight(p, x, f.dim) * f.values[x];
    return acc;
}

double norm(const CubeFunction& f, double p, double j) {
    check_bias(p);
    if (!(j >= 1.0)) throw std::invalid_argument("norm exponent j must be >= 1");
    double acc = 0.0;
    for (Mask x = 0; x < f.size(); ++x)
        acc += measure_weight(p, x, f.dim) * std::pow(std::abs(f.values[x]), j);
    return std::pow(acc, 1.0 / j);
}

double chi(double p, Mask subset, Mask x) {
    check_bias(p);
    const double at0 = std::sqrt(p / (1.0 - p));
    const double at1 = -std::sqrt((1.0 - p) / p);
    double prod = 1.0;
    for (Mask s = subset; s != 0; s &= s - 1) {
        const Mask bit = s & (~s + 1);
        prod *= (x & bit) ? at1 : at0;
    }
    return prod;
}

Spectrum biased_fourier(const CubeFunction& f, double p) {
    check_bias(p);
    Spectrum spec;
    spec.dim = f.dim;
    spec.bias = p;
    spec.coeffs = f.values;
    const double s = std::sqrt(p * (1.0 - p));
    // Fixed coordinate order 0..d-1 keeps results bit-for-bit deterministic.
    for (int i = 0; i < f.dim; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < spec.coeffs.size(); ++base) {
            if (base & bit) continue;
            const double f0 = spec.coeffs[base];
            const double f1 = spec.coeffs[base | bit];
            spec.coeffs[base] = (1.0 - p) * f0 + p * f1;
            spec.coeffs[base | bit] = s * (f0 - f1);
        }
    }
    return spec;
}

CubeFunction inverse_fourier(const Spectrum& spec) {
    check_bias(spec.bias);
    const double p = spec.bias;
    CubeFunction f(spec.dim, spec.coeffs);
    const double s = std::sqrt(p * (1.0 - p));
    for (int i = 0; i < spec.dim; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < f.values.size(); ++base) {
            if (base & bit) continue;
            const double a = f.values[base];
            const double b = f.values[base | bit];
            f.values[base] = a + p * (b / s);
            f.values[base | bit] = a - (1.0 - p) * (b / s);
        }
    }
    return f;
}

CubeFunction random_function(int d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CubeFunction f(d);
    for (double& v : f.values) v = rng.uniform();
    return f;
}

CubeFunction random_indicator(int d, double density, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CubeFunction f(d);
    for (double& v : f.values) v = rng.uniform() < density ? 1.0 : 0.0;
    return f;
}

}  // namespace bregcube
