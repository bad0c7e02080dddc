#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

// Packed bit arrays for points with d beyond mask scale, and the splittable
// counter-based RNG used for reproducible parallel sampling.

namespace bregcube {

struct BitVec {
    int dim = 0;
    std::vector<std::uint64_t> words;  // ceil(dim/64), unused high bits zero

    BitVec() = default;
    explicit BitVec(int d) : dim(d), words((d + 63) / 64, 0) {}

    bool get(int i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (v)
            words[i >> 6] |= bit;
        else
            words[i >> 6] &= ~bit;
    }

    int weight() const {
        int w = 0;
        for (std::uint64_t word : words) w += std::popcount(word);
        return w;
    }

    bool operator==(const BitVec& o) const = default;

    std::string to_hex() const;
    static BitVec from_hex(int dim, const std::string& hex);
};

// Count of positions where a_i = 1 and b_i = 0.
int count_one_zero(const BitVec& a, const BitVec& b);

// Asymmetric cube distance: mu per 0 -> 1 disagreement, 1 per 1 -> 0.
double bitvec_cube_distance(double mu, const BitVec& x, const BitVec& y);

// SplitMix64 stream; streams for distinct keys are derived by hashing
// (seed, index, role) so parallel generation is order-independent.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t role);

}  // namespace bregcube
