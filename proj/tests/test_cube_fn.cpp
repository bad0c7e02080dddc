#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bregcube/cube_fn.hpp"
#include "doctest.h"

using namespace bregcube;

namespace {

// O(4^d) reference transform straight from the definition.
Spectrum naive_fourier(const CubeFunction& f, double p) {
    Spectrum spec;
    spec.dim = f.dim;
    spec.bias = p;
    spec.coeffs.assign(f.size(), 0.0);
    for (Mask s = 0; s < f.size(); ++s)
        for (Mask x = 0; x < f.size(); ++x)
            spec.coeffs[s] += measure_weight(p, x, f.dim) * f[x] * chi(p, s, x);
    return spec;
}

double naive_expectation(const CubeFunction& f, double p) {
    double e = 0.0;
    for (Mask x = 0; x < f.size(); ++x) e += measure_weight(p, x, f.dim) * f[x];
    return e;
}

}  // namespace

TEST_CASE("measure_weight basics") {
    CHECK(measure_weight(0.5, 0b000, 3) == doctest::Approx(0.125));
    CHECK(measure_weight(0.5, 0b101, 3) == doctest::Approx(0.125));
    CHECK(measure_weight(0.3, 1, 1) == doctest::Approx(0.3));
    CHECK(measure_weight(0.3, 0, 1) == doctest::Approx(0.7));
    // d = 2, x = (1, 0): one biased coordinate, one not.
    CHECK(measure_weight(0.3, 0b01, 2) == doctest::Approx(0.3 * 0.7));

    for (double p : {0.05, 0.3, 0.5, 0.8}) {
        double total = 0.0;
        for (Mask x = 0; x < (Mask{1} << 6); ++x) total += measure_weight(p, x, 6);
        CHECK(total == doctest::Approx(1.0));
    }

    CHECK_THROWS_AS(check_bias(0.0), std::invalid_argument);
    CHECK_THROWS_AS(check_bias(1.0), std::invalid_argument);
    CHECK_THROWS_AS(check_bias(1.5), std::invalid_argument);
    CHECK_THROWS_AS(check_bias(-0.2), std::invalid_argument);
}

TEST_CASE("expectation and norms") {
    CubeFunction c(5, 3.25);
    CHECK(expectation(c, 0.17) == doctest::Approx(3.25));

    // Indicator of {x : x_0 = 1} has expectation p.
    CubeFunction ind(4);
    for (Mask x = 0; x < ind.size(); ++x) ind[x] = (x & 1) ? 1.0 : 0.0;
    CHECK(expectation(ind, 0.3) == doctest::Approx(0.3));

    CubeFunction f = random_function(7, 99);
    CHECK(expectation(f, 0.3) == doctest::Approx(naive_expectation(f, 0.3)));

    CHECK(norm(c, 0.4, 3.0) == doctest::Approx(3.25));

    // Indicator of density a at p = 1/2: ||1_A||_j = a^{1/j}.
    CubeFunction a = CubeFunction::indicator(6, {0, 1, 2, 3, 4, 5, 6, 7});
    const double dens = 8.0 / 64.0;
    for (double j : {1.0, 1.5, 2.0, 3.0})
        CHECK(norm(a, 0.5, j) == doctest::Approx(std::pow(dens, 1.0 / j)));

    // Direct oracle for a random function.
    double acc = 0.0;
    for (Mask x = 0; x < f.size(); ++x)
        acc += measure_weight(0.6, x, f.dim) * std::pow(std::abs(f[x]), 2.5);
    CHECK(norm(f, 0.6, 2.5) == doctest::Approx(std::pow(acc, 1.0 / 2.5)));

    CHECK_THROWS_AS(norm(f, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("chi values and orthonormality") {
    // p = 1/2: chi_i = +1 at 0, -1 at 1, so chi_S = parity.
    for (Mask x = 0; x < 8; ++x)
        CHECK(chi(0.5, 0b111, x) == doctest::Approx(hamming_weight(x) % 2 ? -1.0 : 1.0));

    // p = 0.8, singleton: sqrt(p/(1-p)) = 2 at x_i = 0, -1/2 at x_i = 1.
    CHECK(chi(0.8, 0b10, 0b00) == doctest::Approx(2.0));
    CHECK(chi(0.8, 0b10, 0b10) == doctest::Approx(-0.5));
    CHECK(chi(0.8, 0, 0b10) == doctest::Approx(1.0));  // empty set

    // <chi_S, chi_T>_p = [S == T], brute force at d = 4.
    const int d = 4;
    for (double p : {0.2, 0.5, 0.71}) {
        for (Mask s = 0; s < (Mask{1} << d); ++s)
            for (Mask t = s; t < (Mask{1} << d); ++t) {
                double ip = 0.0;
                for (Mask x = 0; x < (Mask{1} << d); ++x)
                    ip += measure_weight(p, x, d) * chi(p, s, x) * chi(p, t, x);
                CHECK(ip == doctest::Approx(s == t ? 1.0 : 0.0).epsilon(1e-9));
            }
    }
}

TEST_CASE("biased_fourier against the naive transform") {
    CubeFunction f = random_function(8, 2024);
    for (double p : {0.1, 0.35, 0.5, 0.9}) {
        const Spectrum fast = biased_fourier(f, p);
        const Spectrum slow = naive_fourier(f, p);
        for (Mask s = 0; s < f.size(); ++s)
            CHECK(fast.coeffs[s] == doctest::Approx(slow.coeffs[s]).epsilon(1e-10));
    }
}

TEST_CASE("fourier of special functions") {
    // fhat(empty) = E_p[f].
    CubeFunction f = random_function(9, 7);
    for (double p : {0.25, 0.5, 0.66})
        CHECK(biased_fourier(f, p).coeffs[0] == doctest::Approx(expectation(f, p)));

    // f = chi_T has spectrum 1_{S = T}.
    const int d = 6;
    const double p = 0.37;
    const Mask t = 0b101100;
    CubeFunction ct(d);
    for (Mask x = 0; x < ct.size(); ++x) ct[x] = chi(p, t, x);
    const Spectrum spec = biased_fourier(ct, p);
    for (Mask s = 0; s < ct.size(); ++s)
        CHECK(spec.coeffs[s] == doctest::Approx(s == t ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("inverse transform round trip") {
    Spectrum zero;
    zero.dim = 4;
    zero.bias = 0.3;
    zero.coeffs.assign(16, 0.0);
    for (double v : inverse_fourier(zero).values) CHECK(v == 0.0);

    zero.coeffs[0] = 2.5;  // constant function
    for (double v : inverse_fourier(zero).values) CHECK(v == doctest::Approx(2.5));

    CubeFunction f = random_function(10, 5150);
    for (double p : {0.05, 0.3, 0.5, 0.77, 0.95}) {
        const CubeFunction back = inverse_fourier(biased_fourier(f, p));
        double err = 0.0;
        for (Mask x = 0; x < f.size(); ++x) err = std::max(err, std::abs(back[x] - f[x]));
        CHECK(err < 1e-11);
    }
}

TEST_CASE("parseval") {
    for (int d : {3, 8, 12}) {
        CubeFunction f = random_function(d, 31 + d);
        for (double p : {0.05, 0.4, 0.5, 0.95}) {
            const double n2 = norm(f, p, 2.0);
            const Spectrum spec = biased_fourier(f, p);
            const double c2 = std::sqrt(std::inner_product(
                spec.coeffs.begin(), spec.coeffs.end(), spec.coeffs.begin(), 0.0));
            CHECK(n2 == doctest::Approx(c2).epsilon(1e-10));
        }
    }
}

TEST_CASE("pointwise measure comparison on the lower half") {
    // For H(x) <= d/2 and p >= 1/2: kappa_p(x) <= kappa_{1/2}(x) scaled, i.e.
    // (2p)^H (2(1-p))^{d-H} <= 1. Exhaustive at d = 12.
    const int d = 12;
    for (double p : {0.5, 0.6, 0.75, 0.9, 0.95}) {
        for (Mask x = 0; x < (Mask{1} << d); ++x) {
            if (hamming_weight(x) > d / 2) continue;
            const double ratio = measure_weight(p, x, d) / measure_weight(0.5, x, d);
            CHECK(ratio <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("random generators are deterministic") {
    CHECK(random_function(6, 42).values == random_function(6, 42).values);
    CHECK(random_function(6, 42).values != random_function(6, 43).values);
    CubeFunction ind = random_indicator(8, 0.25, 9);
    CHECK(ind.values == random_indicator(8, 0.25, 9).values);
    for (double v : ind.values) CHECK((v == 0.0 || v == 1.0));
}
