#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace tmpow {

// A finite {0,1} word together with the 1-based index of its first letter in
// the generated sequence. Bits are packed 64 per limb, LSB first.
class BinaryWord {
public:
    BinaryWord() : offset_(1), size_(0) {}
    BinaryWord(mpz_class offset, uint64_t size)
        : offset_(std::move(offset)), size_(size), limbs_((size + 63) / 64, 0) {}

    uint64_t size() const { return size_; }
    const mpz_class& offset() const { return offset_; }

    int operator[](uint64_t i) const {
        return static_cast<int>((limbs_[i >> 6] >> (i & 63)) & 1u);
    }
    void set(uint64_t i, int bit) {
        uint64_t mask = 1ull << (i & 63);
        if (bit) limbs_[i >> 6] |= mask;
        else     limbs_[i >> 6] &= ~mask;
    }

    // Window code: bits [i, i+m) packed into a uint64, position i first = LSB.
    // Requires m <= 64 and i+m <= size.
    uint64_t window(uint64_t i, unsigned m) const;

    const std::vector<uint64_t>& limbs() const { return limbs_; }

private:
    mpz_class offset_;
    uint64_t size_;
    std::vector<uint64_t> limbs_;
};

// Number of ones in the binary expansion of n. s2(0) = 0.
unsigned long s2(const mpz_class& n);

// Parity of s2(n), i.e. t(n). The sequence is indexed from n = 1; n = 0 is
// rejected. Uses an XOR fold over the limbs instead of a full popcount.
int tm(const mpz_class& n);

// t(n^k) with exact big-integer exponentiation. n >= 1, k >= 1.
int tm_pow(const mpz_class& n, unsigned k);

// The word t(start^k), t((start+1)^k), ..., length values, offset = start.
// Small arguments (n^k fitting in 128 bits) take a machine-word fast path.
BinaryWord tm_word(const mpz_class& start, uint64_t length, unsigned k);

// Fast-path scalar helpers used by tm_word and seq_stats.
inline int tm_u64(uint64_t n) {
    return __builtin_parityll(n);
}
inline int tm_u128(unsigned __int128 n) {
    return __builtin_parityll(static_cast<uint64_t>(n) ^ static_cast<uint64_t>(n >> 64));
}

} // namespace tmpow
