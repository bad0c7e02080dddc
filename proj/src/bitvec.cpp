#include "bregcube/bitvec.hpp"

#include <stdexcept>

namespace bregcube {

namespace {

char hex_digit(unsigned v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

unsigned hex_value(char c) {
    if (c >= '0' && c <= '9') return unsigned(c - '0');
    if (c >= 'a' && c <= 'f') return unsigned(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return unsigned(c - 'A' + 10);
    throw std::invalid_argument("invalid hex digit in bit array");
}

}  // namespace

std::string BitVec::to_hex() const {
    const int nibbles = (dim + 3) / 4;
    std::string out(nibbles, '0');
    for (int n = 0; n < nibbles; ++n) {
        const unsigned v = unsigned(words[n >> 4] >> ((n & 15) * 4)) & 0xf;
        out[nibbles - 1 - n] = hex_digit(v);  // most significant nibble first
    }
    return out;
}

BitVec BitVec::from_hex(int dim, const std::string& hex) {
    const int nibbles = (dim + 3) / 4;
    if (static_cast<int>(hex.size()) != nibbles)
        throw std::invalid_argument("hex string length does not match dimension");
    BitVec v(dim);
    for (int n = 0; n < nibbles; ++n) {
        const std::uint64_t val = hex_value(hex[nibbles - 1 - n]);
        v.words[n >> 4] |= val << ((n & 15) * 4);
    }
    if (dim & 63) {
        const std::uint64_t high = v.words.back() >> (dim & 63);
        if (high != 0) throw std::invalid_argument("hex string sets bits beyond dimension");
    }
    return v;
}

int count_one_zero(const BitVec& a, const BitVec& b) {
    int c = 0;
    for (std::size_t w = 0; w < a.words.size(); ++w)
        c += std::popcount(a.words[w] & ~b.words[w]);
    return c;
}

double bitvec_cube_distance(double mu, const BitVec& x, const BitVec& y) {
    if (x.dim != y.dim) throw std::invalid_argument("cube distance: dimension mismatch");
    return mu * count_one_zero(y, x) + count_one_zero(x, y);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t role) {
    SplitMix64 mix(seed);
    std::uint64_t s = mix.next();
    s ^= SplitMix64(index ^ 0xa5a5a5a5a5a5a5a5ULL).next();
    s ^= SplitMix64(role ^ 0x5a5a5a5a5a5a5a5aULL).next();
    return SplitMix64(s).next();
}

}  // namespace bregcube
