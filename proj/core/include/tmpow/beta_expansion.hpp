#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tmpow/number_field.hpp"

namespace tmpow {

// Greedy beta-expansion of an exact element x = num/den of Q(beta) in [0, 1):
// d_i = floor(beta x_(i-1)), x_i = beta x_(i-1) - d_i. Orbit states are exact
// elements of (1/den) Z[beta], so eventual periodicity is decidable by exact
// state repetition.
struct BetaExpansion {
    std::vector<unsigned> digits;
    std::optional<uint64_t> preperiod;   // set together with period
    std::optional<uint64_t> period;
    bool terminated = false;             // reached the exact state 0
    // orbit[i] = state after emitting i digits; orbit[0] is the input
    std::vector<FieldElement> orbit_num;
    mpz_class den;
};

struct ExpandBudgets {
    uint64_t max_digits = 4096;
    mpfr_prec_t floor_prec_ceiling = 1 << 16;
};

// Throws std::invalid_argument when x is outside [0, 1) (decided exactly:
// sign and x-1 comparisons reduce to integer coordinates / certified balls).
BetaExpansion beta_expand(const FieldElement& num, const mpz_class& den,
                          const NumberField& field, uint64_t max_digits,
                          const ExpandBudgets& budgets = {});

// First exact state repetition in the recorded orbit; nullopt when none
// occurs within the recorded digits.
std::optional<std::pair<uint64_t, uint64_t>> detect_period(const BetaExpansion& e);

// Greedy digits of a real given only as a certified ball in [0, 1): digits
// are emitted while the enclosure determines them and the run stops at the
// first uncertain floor. No orbit is kept and periodicity is never claimed
// (state equality is not decidable from an approximation).
struct BallExpansion {
    std::vector<unsigned> digits;
    bool exhausted_certainty = false;   // stopped early on an ambiguous digit
};

BallExpansion beta_expand_ball(const Ball& x, const NumberField& field,
                               uint64_t max_digits);

// Exact reconstruction identity: beta^len x = sum d_i beta^(len-i) + x_len
// in Q(beta). Verifies with integer coordinates only.
bool reconstruction_holds(const BetaExpansion& e, const FieldElement& num,
                          const mpz_class& den, const NumberField& field);

} // namespace tmpow
