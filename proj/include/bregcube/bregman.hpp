#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bregcube/cube_fn.hpp"

// Scalar Bregman generators, decomposable divergences, the asymmetry measure
// mu, the asymmetric cube metric, the pseudo-Hamming-cube embedding, and the
// partial-match reduction.

namespace bregcube {

struct Generator {
    std::string name;
    double lo;  // open domain interval (lo, hi); +-inf allowed
    double hi;
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    std::function<double(double)> d2phi;

    bool in_domain(double x) const { return x > lo && x < hi; }
};

// Built-ins: l2, kl, itakura-saito, exponential, bit-entropy. Natural log
// throughout. Throws on an unknown name.
const Generator& generator_by_name(const std::string& name);
std::vector<std::string> generator_names();

// 1-d divergence D_phi(x,y) = phi(x) - phi(y) - dphi(y)(x-y).
double divergence1(const Generator& gen, double x, double y);

// Decomposable divergence, sum over coordinates.
double divergence(const Generator& gen, const std::vector<double>& x,
                  const std::vector<double>& y);

// max over ordered grid pairs of D(x,y)/D(y,x) on [l,u] (grid_n points).
double asymmetry_grid(const Generator& gen, double l, double u, int grid_n);

// sup d2phi / inf d2phi over [l,u], by dense grid including endpoints.
double asymmetry_hessian(const Generator& gen, double l, double u, int grid_n = 4096);

struct CubeMetricParams {
    double mu = 1.0;  // cost of a 0 -> 1 disagreement; 1 -> 0 costs 1
    int dim = 0;
};

// D(x,y) = mu |{i : y_i > x_i}| + |{j : x_j > y_j}|
double cube_distance(const CubeMetricParams& params, Mask x, Mask y);

struct InducedCubeParams {
    double scale;  // D(b,a) after relabeling so mu >= 1
    double mu;     // D(a,b)/D(b,a) >= 1
    double a, b;   // anchors, possibly swapped relative to the input
};

InducedCubeParams induced_cube_params(const Generator& gen, double a, double b);

struct EmbeddingAnchors {
    double a, b;
    double c0;  // D(b,a) + D(a,b)
};

EmbeddingAnchors make_anchors(const Generator& gen, double a, double b);

// Coordinate pair (2i, 2i+1) is (a,b) if x_i = 0 else (b,a).
std::vector<double> pseudo_cube_embed(const EmbeddingAnchors& anchors, Mask x, int d);

// Max residual of |D(embed(x), embed(y)) - c0 H(x,y)| over pairs; exhaustive
// for d <= 12, else `trials` random pairs.
double verify_embedding(const Generator& gen, const EmbeddingAnchors& anchors, int d,
                        int trials = 10000, std::uint64_t seed = 1);

// true iff q coordinate-wise dominates p, i.e. (p & ~q) == 0.
bool dominates(Mask q, Mask p);

struct PmCheck {
    bool pm_answer;
    bool ann_answer;
    bool consistent;
};

// Partial-match reduction with mu = 2d+1: q dominates some p in P iff the
// minimum cube distance from q to P is <= d.
PmCheck pm_reduction_check(const std::vector<Mask>& P, Mask q, int d);

}  // namespace bregcube
