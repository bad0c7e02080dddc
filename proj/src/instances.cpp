#include "bregcube/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bregcube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum StreamRole : std::uint64_t { kRoleS = 0, kRoleP = 1, kRoleQ = 2 };

}  // namespace

void GapInstanceConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("gap instance: dim must be >= 1");
    if (n < 1) throw std::invalid_argument("gap instance: n must be >= 1");
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("gap instance: eps must be in [0,1]");
    if (mu < 1.0) throw std::invalid_argument("gap instance: mu must be >= 1");
    if (eps > 0.0 && eps / effective_perturb_mu() > 1.0)
        throw std::invalid_argument("gap instance: eps/mu must be a probability");
}

bool GapInstanceConfig::satisfies_standing_assumption() const {
    return eps > 0.0 && mu >= 1.0 / eps;
}

bool GapInstanceConfig::in_concentration_regime() const {
    if (eps <= 0.0) return false;
    return (eps / effective_perturb_mu()) * dim >= concentration_c * std::log(double(n));
}

BitVec perturb(const BitVec& x, const BigNoiseParams& np, SplitMix64& rng) {
    if (!(np.p1 >= 0.0 && np.p1 <= 1.0 && np.p2 >= 0.0 && np.p2 <= 1.0))
        throw std::invalid_argument("flip probabilities must lie in [0,1]");
    BitVec y = x;
    for (int i = 0; i < x.dim; ++i) {
        const double u = rng.uniform();
        if (x.get(i)) {
            if (u < np.p2) y.set(i, false);
        } else {
            if (u < np.p1) y.set(i, true);
        }
    }
    return y;
}

BitVec sample_lower_half(int d, SplitMix64& rng) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    // Acceptance probability is >= 1/2 by symmetry of the binomial.
    for (;;) {
        BitVec x(d);
        for (std::size_t w = 0; w < x.words.size(); ++w) x.words[w] = rng.next();
        if (d & 63) x.words.back() &= (std::uint64_t{1} << (d & 63)) - 1;
        if (2 * x.weight() <= d) return x;
    }
}

GapInstance generate(const GapInstanceConfig& config) {
    config.validate();
    GapInstance inst;
    inst.config = config;
    inst.S.resize(config.n);
    inst.P.resize(config.n);
    inst.Q.resize(config.n);
    const double pm = config.effective_perturb_mu();
    const BigNoiseParams to_p{config.eps / pm, config.eps};  // data-side perturbation
    const BigNoiseParams to_q{config.eps, config.eps / pm};  // query-side perturbation
    for (int i = 0; i < config.n; ++i) {
        SplitMix64 rng_s(derive_stream(config.seed, std::uint64_t(i), kRoleS));
        SplitMix64 rng_p(derive_stream(config.seed, std::uint64_t(i), kRoleP));
        SplitMix64 rng_q(derive_stream(config.seed, std::uint64_t(i), kRoleQ));
        inst.S[i] = sample_lower_half(config.dim, rng_s);
        inst.P[i] = perturb(inst.S[i], to_p, rng_p);
        inst.Q[i] = perturb(inst.S[i], to_q, rng_q);
    }
    return inst;
}

GapStatistics gap_statistics(const GapInstance& inst) {
    const GapInstanceConfig& cfg = inst.config;
    if (cfg.n < 2) throw std::invalid_argument("gap_statistics: need n >= 2 for cross distances");
    const double d = double(cfg.dim);
    const double eps = cfg.eps;
    const double pm = cfg.effective_perturb_mu();

    GapStatistics st;
    st.paired.resize(cfg.n);
    st.min_cross.resize(cfg.n);
    st.ratio.resize(cfg.n);

    double paired_sum = 0.0, cross_sum = 0.0;
    int outside = 0, sep_fail = 0;
    st.min_ratio = kInf;
    for (int i = 0; i < cfg.n; ++i) {
        st.paired[i] = bitvec_cube_distance(cfg.mu, inst.Q[i], inst.P[i]);
        double mc = kInf;
        for (int j = 0; j < cfg.n; ++j) {
            if (j == i) continue;
            const double dist = bitvec_cube_distance(cfg.mu, inst.Q[i], inst.P[j]);
            cross_sum += dist;
            mc = std::min(mc, dist);
        }
        st.min_cross[i] = mc;
        st.ratio[i] = st.paired[i] > 0.0 ? mc / st.paired[i] : kInf;
        st.min_ratio = std::min(st.min_ratio, st.ratio[i]);
        paired_sum += st.paired[i];
        if (eps > 0.0) {
            const double r = st.paired[i] / (eps * d);
            if (r < 1.0 || r > 3.0) ++outside;
        }
        if (mc <= 10.0 * st.paired[i]) ++sep_fail;
    }

    st.paired_per_bit_mean = paired_sum / (d * cfg.n);
    // Per-bit expectation with query flips (eps up) and data flips (eps/pm up,
    // metric weight mu on 0 -> 1 disagreements).
    const double q1 = eps * (1.0 - eps / pm);        // 1 -> 0 disagreement, weight 1
    const double qm = (eps / pm) * (1.0 - eps);      // 0 -> 1 disagreement, weight mu
    st.analytic_per_bit_mean = q1 + cfg.mu * qm;
    const double second_moment = q1 + cfg.mu * cfg.mu * qm;
    const double var = second_moment - st.analytic_per_bit_mean * st.analytic_per_bit_mean;
    st.per_bit_standard_error = std::sqrt(std::max(0.0, var) / (d * cfg.n));
    st.cross_per_bit_mean = cross_sum / (d * cfg.n * (cfg.n - 1));
    st.frac_paired_outside = double(outside) / cfg.n;
    st.frac_separation_failure = double(sep_fail) / cfg.n;
    return st;
}

}  // namespace bregcube
