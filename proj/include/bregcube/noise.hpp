#pragma once

#include <string>

#include "bregcube/cube_fn.hpp"

// Symmetric and directed noise operators on cube functions, the operator
// identities relating them, and numerical verifiers for the directed
// hypercontractive inequalities.

namespace bregcube {

struct NoiseParams {
    double p1 = 0.0;  // probability a 0-bit flips to 1
    double p2 = 0.0;  // probability a 1-bit flips to 0
};

void check_noise(const NoiseParams& np);

// [R_{p1,p2} f](x) = E_{y ~ nu_{p1,p2}(x)}[f(y)], exact in O(d 2^d).
CubeFunction apply_asymmetric(const CubeFunction& f, const NoiseParams& np);

// T_delta = R_{delta,delta}
CubeFunction apply_symmetric(const CubeFunction& f, double delta);

// tau_delta: scale the S-th p-biased Fourier coefficient by delta^|S|.
CubeFunction apply_tau(const CubeFunction& f, double delta, double p);

struct Decomposition {
    double p_sym;  // the T parameter
    double p_dir;  // the R_{.,0} parameter
};

// R_{p1,p2} = T_{p2} R_{(p1-p2)/(1-2p2),0}; requires p1 >= p2, p1 <= 1-p2, p2 < 1/2.
Decomposition decompose(const NoiseParams& np);

// Max-abs deviation between the two sides of the decomposition identity.
double verify_decomposition(const CubeFunction& f, const NoiseParams& np);

// Max over S of |fourier(R_{p,0} f, 1/2)(S) - ((1-p)/(1+p))^{|S|/2} fourier(f, (1+p)/2)(S)|,
// together with the mirrored R_{0,p} / (1-p)/2 form.
double transform_relation_residual(const CubeFunction& f, double p);

// | ||R_{p,0} f||_{2,1/2} - ||tau_{sqrt((1-p)/(1+p))} f||_{2,(1+p)/2} |, plus
// the R_{0,p} counterpart at bias (1-p)/2.
double norm_identity_residual(const CubeFunction& f, double p);

// Zeroes f outside L = {x : H(x) <= d/2} (resp. outside the upper half).
CubeFunction restrict_lower_half(const CubeFunction& f);
CubeFunction restrict_upper_half(const CubeFunction& f);

bool supported_on_lower_half(const CubeFunction& f);
bool supported_on_upper_half(const CubeFunction& f);

enum class HcVariant {
    keller,        // ||tau_delta f||_{2,p} <= ||f||_{1+delta^2(1-pbar)/(pbar lg(1/pbar)), p}
    biased_tau,    // delta = sqrt((1-p)/(1+p)) at bias (1-p)/2 or (1+p)/2
    half_cube_r,   // ||R_{p,0} f_L||_{2,1/2} <= ||f_L||_{1+1/(1-lg(1-p)), 1/2} (and 0,p / f_U)
    general_r,     // ||R_{p1,p2} f_L||_{2,1/2} <= ||f_L||_{1+(1-2p2)^2/(1-lg((1-p1-p2)/(1-2p2)))}
    asymptotic,    // exponent fit 1+1/(1-lg(1-p)) vs 2 - p lg e
    naive_sym2,    // the d=1 counterexample: unrestricted R_{p,0} against exponent 2
};

struct HypercontractivityCase {
    HcVariant variant = HcVariant::half_cube_r;
    double p = 0.0;        // keller bias / R parameter
    double p1 = 0.0, p2 = 0.0;  // general_r parameters
    double delta = 0.0;    // keller attenuation
    bool upper = false;    // half_cube_r / biased_tau: use the R_{0,p} / f_U / (1-p)/2 side
};

struct HcDerived {
    double delta;     // effective tau attenuation
    double pbar;      // min(p, 1-p) of the biased measure used
    double exponent;  // hypercontractive norm exponent (> 1)
    bool keller_ok;   // delta^2 sqrt(pbar lg(1/pbar)/(1-pbar)) <= 1
};

HcDerived derive_case(const HypercontractivityCase& c);

enum class HcStatus { ok, not_applicable };

struct HcResult {
    HcStatus status = HcStatus::ok;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;  // rhs - lhs; >= -1e-12 certifies the inequality on f
    std::string note;
};

// All logarithms in exponents are base 2 (the closed forms above rely on
// lg 2 = 1). Variants relying on the biased bound report not_applicable when
// the Keller validity condition fails. Half-cube variants reject f with
// support outside the required half.
HcResult hypercontractivity_gap(const CubeFunction& f, const HypercontractivityCase& c);

// Exponent fit: |(1 + 1/(1 - lg(1-p))) - (2 - p lg e)|, to be bounded by C p^2.
double asymptotic_exponent_residual(double p);

}  // namespace bregcube
