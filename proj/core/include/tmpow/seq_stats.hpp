#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tmpow/thue_morse.hpp"

namespace tmpow {

// Exact distinct-factor counts p_f(m) for m = 1..m_max over a finite word.
struct ComplexityReport {
    std::vector<unsigned> m_values;
    std::vector<uint64_t> pf;
    uint64_t prefix_len = 0;
    double entropy_estimate = 0.0;       // log(pf(m_max)) / m_max, natural log
    bool monotone_checked = false;       // asserted only where prefix_len >= 2^(m+2)
    bool monotone_ok = true;
};

ComplexityReport subword_complexity(const BinaryWord& word, unsigned m_max);

// Word along powers: t(start^k), ..., of the given length.
// (Thin wrapper over tm_word with n starting at 1.)
BinaryWord power_word(unsigned k, uint64_t prefix_len);

// p_(t^k)(m) >= ceil(2^(m / 2^(k-2))) for m = 1..m_max on the given prefix.
struct MosheReport {
    unsigned k = 0;
    uint64_t prefix_len = 0;
    std::vector<unsigned> m_values;
    std::vector<uint64_t> counts;
    std::vector<mpz_class> bounds;
    bool all_ok = false;
};

MosheReport moshe_check(unsigned k, unsigned m_max, uint64_t prefix_len);

// Overlapping-window block counts for t(n^k), n <= prefix_len.
struct FrequencyReport {
    unsigned k = 0, m = 0;
    uint64_t prefix_len = 0;
    uint64_t windows = 0;                // prefix_len - m + 1
    std::vector<uint64_t> counts;        // size 2^m; sums to windows exactly
    double max_rel_dev = 0.0;            // max over blocks of |f - 2^-m| 2^m
};

FrequencyReport block_frequencies(unsigned k, unsigned m, uint64_t prefix_len);
// Same counts over an already generated word (k_label only labels the report).
FrequencyReport block_frequencies_of(const BinaryWord& word, unsigned k_label, unsigned m);

// Cube detection. cube_free == true means no factor aaa (a nonempty) occurs;
// otherwise position/period describe a verified cube occurrence.
struct CubeReport {
    bool cube_free = true;
    uint64_t position = 0;     // 0-based start of the verified cube
    uint64_t period = 0;       // |a|
};

CubeReport find_cube(const BinaryWord& word);
bool cube_free_check(uint64_t prefix_len);   // on t(1..prefix_len)

// Exploratory comparison of base-b digit complexity between xi (given by a
// digit prefix) and q1 xi + q2, with certified carry resolution from the
// exact digit interval. Emits data only; no verdict.
struct AffineReport {
    unsigned base = 2;
    uint64_t digits_used = 0;            // certified digits of q1 xi + q2
    bool truncated_by_carry = false;     // ran out of certainty before target
    mpz_class integer_part;
    std::vector<unsigned> m_values;
    std::vector<uint64_t> p_xi;
    std::vector<uint64_t> p_affine;
    std::vector<double> ratio;           // p_affine / p_xi
};

AffineReport affine_complexity_compare(const mpq_class& q1, const mpq_class& q2,
                                       unsigned base,
                                       const std::vector<unsigned>& xi_digits,
                                       unsigned m_max);

} // namespace tmpow
