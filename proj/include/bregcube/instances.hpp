#pragma once

#include <cstdint>
#include <vector>

#include "bregcube/bitvec.hpp"

// Sampling of the hard gap-instance distribution and Monte Carlo validation
// of its distance guarantees at large d, without enumerating the cube.

namespace bregcube {

struct BigNoiseParams {
    double p1 = 0.0;
    double p2 = 0.0;
};

struct GapInstanceConfig {
    int dim = 0;
    int n = 0;
    double eps = 0.01;       // 0 -> 1 flip rate for queries
    double mu = 100.0;       // metric asymmetry, >= 1
    double perturb_mu = -1;  // optional override for the perturbation mu (mu' regime); < 0 -> mu
    std::uint64_t seed = 0;
    double concentration_c = 1.0;  // regime flag requires (eps/mu) d >= c ln n

    double effective_perturb_mu() const { return perturb_mu > 0 ? perturb_mu : mu; }
    void validate() const;
    // The asymptotic analysis assumes mu >= 1/eps; desk-scale experiments may
    // run outside that regime, so this is reported rather than enforced.
    bool satisfies_standing_assumption() const;
    bool in_concentration_regime() const;
};

struct GapInstance {
    GapInstanceConfig config;
    std::vector<BitVec> S;  // uniform on the lower half L
    std::vector<BitVec> P;  // nu_{eps/mu, eps}(S), the data set
    std::vector<BitVec> Q;  // nu_{eps, eps/mu}(S), the query pool
};

// Independent per-bit flips: 0 -> 1 with probability p1, 1 -> 0 with p2.
BitVec perturb(const BitVec& x, const BigNoiseParams& np, SplitMix64& rng);

// Uniform on L = {x : H(x) <= d/2} by rejection from the uniform cube.
BitVec sample_lower_half(int d, SplitMix64& rng);

// Deterministic given config.seed, independent of evaluation order.
GapInstance generate(const GapInstanceConfig& config);

struct GapStatistics {
    // Paired distances D(q_i, p_i) under the instance metric mu.
    std::vector<double> paired;
    // min_{j != i} D(q_i, p_j)
    std::vector<double> min_cross;
    std::vector<double> ratio;  // min_cross / paired (inf when paired = 0)

    double paired_per_bit_mean;      // mean of paired / d
    double analytic_per_bit_mean;    // 2 eps - eps^2 - eps^2/mu
    double per_bit_standard_error;   // SE of the empirical per-bit mean
    double cross_per_bit_mean;
    double min_ratio;
    double frac_paired_outside;      // ratio of paired/(eps d) outside [1, 3]
    double frac_separation_failure;  // ratio of min_cross <= 10 * paired
};

GapStatistics gap_statistics(const GapInstance& inst);

}  // namespace bregcube
