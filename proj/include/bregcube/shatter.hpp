#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bregcube/bitvec.hpp"
#include "bregcube/cube_fn.hpp"

// Exact perturbation-mass (gamma) computations into cells and empirical
// validation of the shattering bounds against explicit partitions.

namespace bregcube {

struct ShatterParams {
    double eps = 0.05;
    double mu = 20.0;  // >= 1; the asymptotic regime further wants mu >= 1/eps
    double c0 = 0.01;
    double c1 = 0.01;

    void validate() const;
};

struct Partition {
    int dim = 0;
    int m = 0;                      // cell count
    std::vector<std::uint32_t> cell_of;  // length 2^dim, values in [0, m)

    void validate() const;
    std::vector<std::size_t> cell_sizes() const;
    // Light cells: |A_i| <= 2^d / sqrt(m).
    std::vector<int> light_cells() const;
};

// gamma_{y,eps,eps/mu}(A) for all y at once: R_{eps, eps/mu} 1_A.
// A must be 0/1-valued.
CubeFunction gamma_all(const CubeFunction& A, const ShatterParams& params);

// B = {y in L : gamma_y(A) >= a^{c0 eps}}; requires |A| <= a 2^d.
std::vector<Mask> heavy_set(const CubeFunction& A, const ShatterParams& params, double a);

struct ShatterReport {
    bool holds;
    double lhs;  // |B| / 2^d
    double rhs;  // a^{1 + c1 eps}
    std::size_t heavy_count;
};

ShatterReport shattering_report(const CubeFunction& A, const ShatterParams& params, double a);

struct PartitionShatterReport {
    bool holds;
    double violation_fraction;  // fraction of y in L with max light-cell gamma >= threshold
    double threshold;           // m^{-c0 eps / 2}
    double bound;               // m^{-c1 eps / 2}
    std::size_t light_cell_count;
    bool no_light_cells;
};

PartitionShatterReport partition_shatter(const Partition& part, const ShatterParams& params);

enum class PartitionKind { bit_sample, random_balanced, seeded_hash };

// bit_sample: cells are the values of the low k coordinates (m = 2^k).
// random_balanced: round-robin cells over a shuffled mask order.
// seeded_hash: cell = hash(mask) mod m.
Partition make_partition(PartitionKind kind, int d, int k_or_m, std::uint64_t seed = 0);

}  // namespace bregcube
