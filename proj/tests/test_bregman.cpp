#include <cmath>
#include <stdexcept>
#include <vector>

#include "bregcube/bitvec.hpp"
#include "bregcube/bregman.hpp"
#include "doctest.h"

using namespace bregcube;

TEST_CASE("builtin generators") {
    for (const auto& name : generator_names()) {
        const Generator& g = generator_by_name(name);
        CHECK(g.name == name);
        // Sanity on a safe interior point.
        const double x = (name == "bit-entropy") ? 0.4 : 1.0;
        CHECK(g.in_domain(x));
        CHECK(std::isfinite(g.phi(x)));
        CHECK(g.d2phi(x) > 0.0);  // strict convexity
    }
    CHECK(generator_names().size() == 5);
    CHECK_THROWS_AS(generator_by_name("mahalanobis"), std::invalid_argument);
}

TEST_CASE("divergence values") {
    const Generator& l2 = generator_by_name("l2");
    const Generator& kl = generator_by_name("kl");
    const Generator& is = generator_by_name("itakura-saito");

    // D(x, x) = 0 and D >= 0 for every builtin.
    for (const auto& name : generator_names()) {
        const Generator& g = generator_by_name(name);
        const double pt = (name == "bit-entropy") ? 0.3 : 2.0;
        const double pt2 = (name == "bit-entropy") ? 0.6 : 0.5;
        CHECK(divergence1(g, pt, pt) == doctest::Approx(0.0));
        CHECK(divergence1(g, pt, pt2) >= 0.0);
        CHECK(divergence1(g, pt2, pt) >= 0.0);
    }

    // l2 uses phi = x^2/2, so D(x,y) = (x-y)^2 / 2.
    CHECK(divergence1(l2, 3.0, 1.0) == doctest::Approx(2.0));
    CHECK(divergence(l2, {1.0, 2.0}, {0.0, 0.0}) == doctest::Approx(2.5));

    // KL: D(x,y) = x ln(x/y) - x + y.
    CHECK(divergence1(kl, 2.0, 1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0));

    // Itakura-Saito: D(x,y) = x/y - ln(x/y) - 1.
    CHECK(divergence1(is, 2.0, 1.0) == doctest::Approx(1.0 - std::log(2.0)));
    CHECK(divergence1(is, 1.0, 2.0) == doctest::Approx(std::log(2.0) - 0.5));

    // Asymmetry is real: D(x,y) != D(y,x) for the non-quadratic generators.
    CHECK(divergence1(kl, 2.0, 1.0) != doctest::Approx(divergence1(kl, 1.0, 2.0)));

    CHECK_THROWS_AS(divergence1(kl, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(divergence(kl, {1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("asymmetry measure mu") {
    const Generator& l2 = generator_by_name("l2");
    const Generator& is = generator_by_name("itakura-saito");
    const Generator& kl = generator_by_name("kl");

    // Quadratic generator is symmetric: mu = 1 exactly.
    CHECK(asymmetry_grid(l2, -3.0, 5.0, 101) == doctest::Approx(1.0));
    CHECK(asymmetry_hessian(l2, -3.0, 5.0) == doctest::Approx(1.0));

    // Hessian ratios have closed forms: IS d2phi = 1/x^2, KL d2phi = 1/x.
    CHECK(asymmetry_hessian(is, 1.0, 4.0) == doctest::Approx(16.0));
    CHECK(asymmetry_hessian(kl, 0.1, 1.0) == doctest::Approx(10.0));

    // IS ratio D(x,y)/D(y,x) depends only on t = x/y and is maximized at the
    // extreme grid ratio t = u/l; closed-form oracle at t = 4.
    const double t = 4.0;
    const double oracle =
        (t - std::log(t) - 1.0) / (1.0 / t + std::log(t) - 1.0);
    const double grid = asymmetry_grid(is, 1.0, 4.0, 512);
    CHECK(grid == doctest::Approx(oracle).epsilon(1e-6));

    // The grid value refines monotonically and never exceeds a sup bound
    // derived from the Hessian ratio.
    const double coarse = asymmetry_grid(is, 1.0, 4.0, 64);
    CHECK(coarse <= grid + 1e-12);
    CHECK(grid <= asymmetry_hessian(is, 1.0, 4.0) + 1e-12);

    CHECK_THROWS_AS(asymmetry_grid(kl, 2.0, 1.0, 16), std::invalid_argument);
}

TEST_CASE("asymmetric cube distance") {
    CubeMetricParams m{/*mu=*/3.0, /*dim=*/4};
    // x = 0101, y = 0011: one 0->1 (coordinate 1) and one 1->0 (coordinate 2).
    CHECK(cube_distance(m, 0b0101, 0b0011) == doctest::Approx(3.0 + 1.0));
    CHECK(cube_distance(m, 0b0011, 0b0101) == doctest::Approx(1.0 + 3.0));
    CHECK(cube_distance(m, 0b0101, 0b0101) == 0.0);
    // mu = 1 recovers Hamming distance.
    CubeMetricParams ham{1.0, 4};
    for (Mask x = 0; x < 16; ++x)
        for (Mask y = 0; y < 16; ++y)
            CHECK(cube_distance(ham, x, y) ==
                  doctest::Approx(hamming_weight(x ^ y)));
    // Triangle inequality (it is a quasimetric) at mu = 3.
    for (Mask x = 0; x < 16; ++x)
        for (Mask y = 0; y < 16; ++y)
            for (Mask z = 0; z < 16; ++z)
                CHECK(cube_distance(m, x, z) <=
                      cube_distance(m, x, y) + cube_distance(m, y, z) + 1e-12);
}

TEST_CASE("induced cube parameters") {
    const Generator& is = generator_by_name("itakura-saito");
    const InducedCubeParams p = induced_cube_params(is, 1.0, 2.0);
    // Relabeled so mu >= 1: scale = D(1,2) = ln 2 - 1/2, mu = D(2,1)/D(1,2).
    const double d21 = 1.0 - std::log(2.0);
    const double d12 = std::log(2.0) - 0.5;
    CHECK(p.scale == doctest::Approx(d12));
    CHECK(p.mu == doctest::Approx(d21 / d12));
    CHECK(p.mu >= 1.0);

    // Symmetric generator: mu = 1 for any anchors.
    const InducedCubeParams q = induced_cube_params(generator_by_name("l2"), -1.0, 2.5);
    CHECK(q.mu == doctest::Approx(1.0));
}

TEST_CASE("pseudo-cube embedding") {
    const Generator& kl = generator_by_name("kl");
    const EmbeddingAnchors anchors = make_anchors(kl, 0.2, 0.7);
    CHECK(anchors.c0 ==
          doctest::Approx(divergence1(kl, 0.2, 0.7) + divergence1(kl, 0.7, 0.2)));
    CHECK(anchors.c0 > 0.0);

    // Coordinate layout: pair i is (a,b) when x_i = 0, (b,a) when x_i = 1.
    const std::vector<double> e = pseudo_cube_embed(anchors, 0b10, 2);
    CHECK(e.size() == 4);
    CHECK(e[0] == doctest::Approx(0.2));
    CHECK(e[1] == doctest::Approx(0.7));
    CHECK(e[2] == doctest::Approx(0.7));
    CHECK(e[3] == doctest::Approx(0.2));

    // D(embed(x), embed(y)) = c0 H(x,y) exactly; exhaustive at d = 8.
    CHECK(verify_embedding(kl, anchors, 8) < 1e-10);
    const Generator& is = generator_by_name("itakura-saito");
    CHECK(verify_embedding(is, make_anchors(is, 1.0, 3.0), 6) < 1e-10);
    // Large-d randomized path.
    CHECK(verify_embedding(kl, anchors, 20, 2000, 5) < 1e-9);
}

TEST_CASE("dominance and the partial-match reduction") {
    CHECK(dominates(0b111, 0b101));
    CHECK(dominates(0b101, 0b101));
    CHECK_FALSE(dominates(0b101, 0b111));
    CHECK(dominates(0b1, 0b0));

    // Everything dominates the all-zero pattern.
    PmCheck c = pm_reduction_check({0b000}, 0b010, 3);
    CHECK(c.pm_answer);
    CHECK(c.ann_answer);
    CHECK(c.consistent);

    // q = 000 vs P = {111}: no dominance, distance 3 mu = 21 > d = 3.
    c = pm_reduction_check({0b111}, 0b000, 3);
    CHECK_FALSE(c.pm_answer);
    CHECK_FALSE(c.ann_answer);
    CHECK(c.consistent);

    // Boundary: q differs from some p only by extra ones -> distance <= d.
    c = pm_reduction_check({0b110}, 0b111, 3);
    CHECK(c.pm_answer);
    CHECK(c.ann_answer);
    CHECK(c.consistent);

    // Exhaustive consistency at small d, random P.
    const int d = 8;
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Mask> P;
        for (int i = 0; i < 6; ++i)
            P.push_back(static_cast<Mask>(rng.next() & ((Mask{1} << d) - 1)));
        for (Mask q = 0; q < (Mask{1} << d); ++q)
            CHECK(pm_reduction_check(P, q, d).consistent);
    }
}
