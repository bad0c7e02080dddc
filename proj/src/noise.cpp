#include "bregcube/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bregcube {

namespace {

double lg(double x) { return std::log2(x); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

void check_noise(const NoiseParams& np) {
    if (!(np.p1 >= 0.0 && np.p1 <= 1.0 && np.p2 >= 0.0 && np.p2 <= 1.0))
        throw std::invalid_argument("flip probabilities must lie in [0,1]");
}

CubeFunction apply_asymmetric(const CubeFunction& f, const NoiseParams& np) {
    check_noise(np);
    CubeFunction g = f;
    // Per-coordinate row-stochastic kernel, rows indexed by x_i:
    //   x_i = 0: (1-p1) f0 + p1 f1
    //   x_i = 1: p2 f0 + (1-p2) f1
    for (int i = 0; i < f.dim; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < g.values.size(); ++base) {
            if (base & bit) continue;
            const double f0 = g.values[base];
            const double f1 = g.values[base | bit];
            g.values[base] = (1.0 - np.p1) * f0 + np.p1 * f1;
            g.values[base | bit] = np.p2 * f0 + (1.0 - np.p2) * f1;
        }
    }
    return g;
}

CubeFunction apply_symmetric(const CubeFunction& f, double delta) {
    return apply_asymmetric(f, {delta, delta});
}

CubeFunction apply_tau(const CubeFunction& f, double delta, double p) {
    Spectrum spec = biased_fourier(f, p);
    for (Mask s = 0; s < spec.coeffs.size(); ++s)
        spec.coeffs[s] *= std::pow(delta, hamming_weight(s));
    return inverse_fourier(spec);
}

Decomposition decompose(const NoiseParams& np) {
    check_noise(np);
    if (!(np.p1 >= np.p2 && np.p1 <= 1.0 - np.p2 && np.p2 < 0.5))
        throw std::invalid_argument(
            "decomposition requires p1 >= p2, p1 <= 1-p2, p2 < 1/2");
    // The quotient lies in [0,1] under the preconditions; clamp away rounding
    // spill at the boundary p1 = 1 - p2.
    return {np.p2, std::clamp((np.p1 - np.p2) / (1.0 - 2.0 * np.p2), 0.0, 1.0)};
}

double verify_decomposition(const CubeFunction& f, const NoiseParams& np) {
    const Decomposition d = decompose(np);
    const CubeFunction lhs = apply_asymmetric(f, np);
    const CubeFunction rhs = apply_asymmetric(apply_symmetric(f, d.p_sym), {d.p_dir, 0.0});
    return max_abs_diff(lhs.values, rhs.values);
}

double transform_relation_residual(const CubeFunction& f, double p) {
    check_bias(p);
    const double atten = std::sqrt((1.0 - p) / (1.0 + p));
    double residual = 0.0;

    // R_{p,0} against the (1+p)/2-biased coefficients.
    {
        const Spectrum lhs = biased_fourier(apply_asymmetric(f, {p, 0.0}), 0.5);
        const Spectrum rhs = biased_fourier(f, (1.0 + p) / 2.0);
        for (Mask s = 0; s < lhs.coeffs.size(); ++s) {
            const double scaled = std::pow(atten, hamming_weight(s)) * rhs.coeffs[s];
            residual = std::max(residual, std::abs(lhs.coeffs[s] - scaled));
        }
    }
    // Mirrored R_{0,p} against the (1-p)/2-biased coefficients.
    {
        const Spectrum lhs = biased_fourier(apply_asymmetric(f, {0.0, p}), 0.5);
        const Spectrum rhs = biased_fourier(f, (1.0 - p) / 2.0);
        for (Mask s = 0; s < lhs.coeffs.size(); ++s) {
            const double scaled = std::pow(atten, hamming_weight(s)) * rhs.coeffs[s];
            residual = std::max(residual, std::abs(lhs.coeffs[s] - scaled));
        }
    }
    return residual;
}

double norm_identity_residual(const CubeFunction& f, double p) {
    check_bias(p);
    const double atten = std::sqrt((1.0 - p) / (1.0 + p));
    const double r1 = std::abs(norm(apply_asymmetric(f, {p, 0.0}), 0.5, 2.0) -
                               norm(apply_tau(f, atten, (1.0 + p) / 2.0), (1.0 + p) / 2.0, 2.0));
    const double r2 = std::abs(norm(apply_asymmetric(f, {0.0, p}), 0.5, 2.0) -
                               norm(apply_tau(f, atten, (1.0 - p) / 2.0), (1.0 - p) / 2.0, 2.0));
    return std::max(r1, r2);
}

CubeFunction restrict_lower_half(const CubeFunction& f) {
    CubeFunction g = f;
    for (Mask x = 0; x < g.size(); ++x)
        if (2 * hamming_weight(x) > g.dim) g.values[x] = 0.0;
    return g;
}

CubeFunction restrict_upper_half(const CubeFunction& f) {
    CubeFunction g = f;
    for (Mask x = 0; x < g.size(); ++x)
        if (2 * hamming_weight(x) < g.dim) g.values[x] = 0.0;
    return g;
}

bool supported_on_lower_half(const CubeFunction& f) {
    for (Mask x = 0; x < f.size(); ++x)
        if (2 * hamming_weight(x) > f.dim && f.values[x] != 0.0) return false;
    return true;
}

bool supported_on_upper_half(const CubeFunction& f) {
    for (Mask x = 0; x < f.size(); ++x)
        if (2 * hamming_weight(x) < f.dim && f.values[x] != 0.0) return false;
    return true;
}

HcDerived derive_case(const HypercontractivityCase& c) {
    HcDerived d{};
    switch (c.variant) {
        case HcVariant::keller: {
            check_bias(c.p);
            d.delta = c.delta;
            d.pbar = std::min(c.p, 1.0 - c.p);
            d.exponent = 1.0 + d.delta * d.delta * (1.0 - d.pbar) / (d.pbar * lg(1.0 / d.pbar));
            break;
        }
        case HcVariant::biased_tau:
        case HcVariant::half_cube_r:
        case HcVariant::asymptotic: {
            check_bias(c.p);
            d.delta = std::sqrt((1.0 - c.p) / (1.0 + c.p));
            d.pbar = (1.0 - c.p) / 2.0;  // both bias labelings share pbar
            d.exponent = 1.0 + 1.0 / (1.0 - lg(1.0 - c.p));
            break;
        }
        case HcVariant::general_r: {
            check_noise({c.p1, c.p2});
            const double p = (c.p1 - c.p2) / (1.0 - 2.0 * c.p2);
            d.delta = (1.0 - 2.0 * c.p2) * std::sqrt((1.0 - p) / (1.0 + p));
            d.pbar = (1.0 - p) / 2.0;
            d.exponent = 1.0 + (1.0 - 2.0 * c.p2) * (1.0 - 2.0 * c.p2) /
                                   (1.0 - lg((1.0 - c.p1 - c.p2) / (1.0 - 2.0 * c.p2)));
            break;
        }
        case HcVariant::naive_sym2: {
            d.delta = 1.0;
            d.pbar = 0.5;
            d.exponent = 2.0;
            break;
        }
    }
    // The tau bound needs delta <= 1 (an attenuation) on top of the stated
    // validity condition: delta slightly above 1 can satisfy the latter at
    // small pbar yet already fails on single characters.
    d.keller_ok =
        d.delta <= 1.0 + 1e-15 &&
        d.delta * d.delta * std::sqrt(d.pbar * lg(1.0 / d.pbar) / (1.0 - d.pbar)) <= 1.0 + 1e-15;
    return d;
}

HcResult hypercontractivity_gap(const CubeFunction& f, const HypercontractivityCase& c) {
    const HcDerived d = derive_case(c);
    HcResult r;

    const bool needs_keller = c.variant != HcVariant::naive_sym2;
    if (needs_keller && !d.keller_ok) {
        r.status = HcStatus::not_applicable;
        r.note = "Keller validity condition fails for these parameters";
        return r;
    }

    switch (c.variant) {
        case HcVariant::keller:
            r.lhs = norm(apply_tau(f, c.delta, c.p), c.p, 2.0);
            r.rhs = norm(f, c.p, d.exponent);
            break;
        case HcVariant::biased_tau: {
            const double bias = c.upper ? (1.0 - c.p) / 2.0 : (1.0 + c.p) / 2.0;
            r.lhs = norm(apply_tau(f, d.delta, bias), bias, 2.0);
            r.rhs = norm(f, bias, d.exponent);
            break;
        }
        case HcVariant::half_cube_r:
        case HcVariant::asymptotic: {
            if (c.upper) {
                if (!supported_on_upper_half(f))
                    throw std::invalid_argument("R_{0,p} half-cube variant needs support in U");
                r.lhs = norm(apply_asymmetric(f, {0.0, c.p}), 0.5, 2.0);
            } else {
                if (!supported_on_lower_half(f))
                    throw std::invalid_argument("R_{p,0} half-cube variant needs support in L");
                r.lhs = norm(apply_asymmetric(f, {c.p, 0.0}), 0.5, 2.0);
            }
            const double expo = c.variant == HcVariant::asymptotic
                                    ? 2.0 - c.p * lg(std::exp(1.0)) + 2.0 * c.p * c.p
                                    : d.exponent;
            r.rhs = norm(f, 0.5, expo);
            break;
        }
        case HcVariant::general_r: {
            if (!supported_on_lower_half(f))
                throw std::invalid_argument("general R variant needs support in L");
            r.lhs = norm(apply_asymmetric(f, {c.p1, c.p2}), 0.5, 2.0);
            r.rhs = norm(f, 0.5, d.exponent);
            break;
        }
        case HcVariant::naive_sym2:
            r.lhs = norm(apply_asymmetric(f, {c.p, 0.0}), 0.5, 2.0);
            r.rhs = norm(f, 0.5, 2.0);
            break;
    }
    r.gap = r.rhs - r.lhs;
    return r;
}

double asymptotic_exponent_residual(double p) {
    check_bias(p);
    const double exact = 1.0 + 1.0 / (1.0 - lg(1.0 - p));
    const double linear = 2.0 - p * lg(std::exp(1.0));
    return std::abs(exact - linear);
}

}  // namespace bregcube
