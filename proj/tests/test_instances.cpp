#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bregcube/cube_fn.hpp"
#include "bregcube/instances.hpp"
#include "doctest.h"

using namespace bregcube;

TEST_CASE("bitvec hex round trip") {
    SplitMix64 rng(5);
    for (int d : {1, 7, 64, 65, 1000}) {
        BitVec v(d);
        for (int i = 0; i < d; ++i) v.set(i, rng.uniform() < 0.5);
        CHECK(BitVec::from_hex(d, v.to_hex()) == v);
    }
    // Hex strings that set bits beyond the dimension are rejected.
    CHECK_THROWS_AS(BitVec::from_hex(3, "f"), std::invalid_argument);
    BitVec z(8);
    CHECK(BitVec::from_hex(8, z.to_hex()) == z);
}

TEST_CASE("bitvec cube distance matches the mask version") {
    // d = 4, x = 0101, y = 0011 with mu = 3: one flip in each direction.
    BitVec x(4), y(4);
    x.set(0, true);
    x.set(2, true);
    y.set(0, true);
    y.set(1, true);
    CHECK(bitvec_cube_distance(3.0, x, y) == doctest::Approx(4.0));
    CHECK(count_one_zero(x, y) == 1);
    CHECK(count_one_zero(y, x) == 1);
}

TEST_CASE("perturb") {
    SplitMix64 rng(77);
    BitVec x(200);
    for (int i = 0; i < 200; i += 3) x.set(i, true);

    // Zero rates: identity. Unit rates: complement.
    CHECK(perturb(x, {0.0, 0.0}, rng) == x);
    const BitVec comp = perturb(x, {1.0, 1.0}, rng);
    for (int i = 0; i < 200; ++i) CHECK(comp.get(i) != x.get(i));

    // Flip-rate concentration: from the all-zero point, H/d ~ Binomial mean p1.
    const int d = 100000;
    BitVec zero(d);
    const BitVec flipped = perturb(zero, {0.1, 0.0}, rng);
    CHECK(flipped.weight() / static_cast<double>(d) ==
          doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("sample_lower_half") {
    SplitMix64 rng(3);
    // d = 1: L = {0}.
    for (int t = 0; t < 20; ++t) CHECK(sample_lower_half(1, rng).weight() == 0);
    // d = 2: weight <= 1.
    for (int t = 0; t < 200; ++t) CHECK(sample_lower_half(2, rng).weight() <= 1);

    // d = 4: uniform over the 11 points of L; chi-square-style tolerance.
    const int trials = 110000;
    std::vector<int> counts(16, 0);
    for (int t = 0; t < trials; ++t) {
        const BitVec s = sample_lower_half(4, rng);
        Mask m = 0;
        for (int i = 0; i < 4; ++i) m |= Mask{s.get(i)} << i;
        REQUIRE(s.weight() <= 2);
        ++counts[m];
    }
    for (Mask m = 0; m < 16; ++m) {
        const int expect = (std::popcount(m) <= 2) ? trials / 11 : 0;
        CHECK(std::abs(counts[m] - expect) < 600);  // ~6 sigma at n/11 = 10^4
    }
}

TEST_CASE("config validation") {
    GapInstanceConfig cfg;
    cfg.dim = 100;
    cfg.n = 10;
    cfg.eps = 0.01;
    cfg.mu = 100.0;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.satisfies_standing_assumption());

    cfg.mu = 10.0;  // below 1/eps: allowed, but flagged
    CHECK_NOTHROW(cfg.validate());
    CHECK_FALSE(cfg.satisfies_standing_assumption());

    cfg.mu = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.mu = 100.0;
    cfg.eps = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.eps = 0.01;
    cfg.n = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    // Concentration regime flag: (eps/mu) d >= c ln n.
    GapInstanceConfig big;
    big.dim = 10000;
    big.n = 100;
    big.eps = 0.01;
    big.mu = 100.0;
    CHECK_FALSE(big.in_concentration_regime());  // (1e-4)(1e4) = 1 < ln 100
    big.dim = 1000000;
    CHECK(big.in_concentration_regime());
}

TEST_CASE("generate determinism and structure") {
    GapInstanceConfig cfg;
    cfg.dim = 500;
    cfg.n = 20;
    cfg.eps = 0.05;
    cfg.mu = 25.0;
    cfg.seed = 42;

    const GapInstance a = generate(cfg);
    const GapInstance b = generate(cfg);
    REQUIRE(a.S.size() == 20);
    REQUIRE(a.P.size() == 20);
    REQUIRE(a.Q.size() == 20);
    CHECK(a.S == b.S);
    CHECK(a.P == b.P);
    CHECK(a.Q == b.Q);

    cfg.seed = 43;
    CHECK(generate(cfg).S != a.S);

    for (const BitVec& s : a.S) CHECK(2 * s.weight() <= cfg.dim);

    // eps = 0: no perturbation at all.
    cfg.eps = 0.0;
    cfg.seed = 42;
    const GapInstance clean = generate(cfg);
    CHECK(clean.P == clean.S);
    CHECK(clean.Q == clean.S);
}

TEST_CASE("gap statistics") {
    GapInstanceConfig cfg;
    cfg.dim = 10000;
    cfg.n = 50;
    cfg.eps = 0.01;
    // mu = 10 keeps the per-point spread of paired/(eps d) near 1/3 of the
    // [1,3] band half-width; larger mu inflates the variance mu^2 qm.
    cfg.mu = 10.0;
    cfg.seed = 7;

    const GapInstance inst = generate(cfg);
    const GapStatistics st = gap_statistics(inst);
    REQUIRE(st.paired.size() == 50);
    REQUIRE(st.min_cross.size() == 50);

    // Analytic per-bit mean 2 eps - eps^2 - eps^2 / mu, and the empirical
    // mean should sit within 4 standard errors of it.
    const double expect = 2 * cfg.eps - cfg.eps * cfg.eps - cfg.eps * cfg.eps / cfg.mu;
    CHECK(st.analytic_per_bit_mean == doctest::Approx(expect));
    CHECK(st.per_bit_standard_error > 0.0);
    CHECK(std::abs(st.paired_per_bit_mean - st.analytic_per_bit_mean) <
          4.0 * st.per_bit_standard_error);

    // Unrelated points differ on ~d/3 coordinates, so cross distances dwarf
    // paired ones at these rates.
    CHECK(st.min_ratio > 10.0);
    CHECK(st.frac_separation_failure == 0.0);
    CHECK(st.frac_paired_outside <= 0.1);

    // Degenerate eps = 0: paired distances are identically zero.
    cfg.eps = 0.0;
    const GapStatistics zero = gap_statistics(generate(cfg));
    for (double v : zero.paired) CHECK(v == 0.0);
    CHECK(std::isinf(zero.ratio[0]));

    // Statistics need at least two points for cross distances.
    cfg.n = 1;
    cfg.eps = 0.01;
    CHECK_THROWS_AS(gap_statistics(generate(cfg)), std::invalid_argument);
}

TEST_CASE("derive_stream separates roles and indices") {
    CHECK(derive_stream(1, 2, 3) != derive_stream(1, 2, 4));
    CHECK(derive_stream(1, 2, 3) != derive_stream(1, 3, 3));
    CHECK(derive_stream(1, 2, 3) != derive_stream(2, 2, 3));
    CHECK(derive_stream(1, 2, 3) == derive_stream(1, 2, 3));
}
