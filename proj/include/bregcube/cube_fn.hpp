#pragma once

#include <cstdint>
#include <vector>

// Dense real-valued functions on {0,1}^d, p-biased product measures, and the
// p-biased Fourier transform. Bit i of a mask is coordinate i; subset masks
// share the convention.

namespace bregcube {

using Mask = std::uint32_t;

// Exact dense paths are capped so 2^d stays addressable.
inline constexpr int kMaxExactDim = 26;

struct CubeFunction {
    int dim = 0;
    std::vector<double> values;  // length 2^dim, values[mask] = f(mask)

    CubeFunction() = default;
    CubeFunction(int d, double fill = 0.0);
    CubeFunction(int d, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double& operator[](Mask x) { return values[x]; }
    double operator[](Mask x) const { return values[x]; }

    static CubeFunction indicator(int d, const std::vector<Mask>& points);
};

struct Spectrum {
    int dim = 0;
    double bias = 0.5;
    std::vector<double> coeffs;  // length 2^dim, indexed by subset mask
};

int hamming_weight(Mask x);

// Throws std::invalid_argument unless 0 < p < 1.
void check_bias(double p);

// kappa_p(x) = p^H(x) (1-p)^(d-H(x))
double measure_weight(double p, Mask x, int d);

double expectation(const CubeFunction& f, double p);

// (sum_x kappa_p(x) |f(x)|^j)^(1/j), j >= 1 (possibly non-integer)
double norm(const CubeFunction& f, double p, double j);

// chi_S^p(x) = prod_{i in S} chi_i^p(x), chi_i^p = sqrt(p/(1-p)) at x_i = 0
// and -sqrt((1-p)/p) at x_i = 1.
double chi(double p, Mask subset, Mask x);

// O(d 2^d) butterfly; coefficient order matches the naive definition
// fhat(S) = sum_x kappa_p(x) f(x) chi_S^p(x).
Spectrum biased_fourier(const CubeFunction& f, double p);

CubeFunction inverse_fourier(const Spectrum& spec);

// Seeded test-function generators used by the sweep drivers and tests.
CubeFunction random_function(int d, std::uint64_t seed);               // iid uniform [0,1]
CubeFunction random_indicator(int d, double density, std::uint64_t seed);

}  // namespace bregcube
