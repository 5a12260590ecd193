#pragma once

#include <string>

#include <gmpxx.h>

namespace tmpow {

// Which branch of the congruence construction produced (m, n, x).
enum class WitnessCase { EvenK, OddSOdd, OddSEven };

const char* to_string(WitnessCase c);

// The full witness for a power exponent k >= 2:
//
//   x      solves  X == 2^(2m-1) - 1         (mod 2^(2m))
//           and    3^(k-1) X == 2^(2n) - 1   (mod 2^(2n+1))
//   y      is the least positive solution of (k 2^-nu(k)) Y == x
//           (mod 2^(2m+2n+1)), and z = k 2^-nu(k) y.
//
// For odd k the construction goes through 3^(k-1) == 1 + 2^s + a 2^(s+1)
// (mod 2^(s+2)); (s, a) are retained for reporting.
struct CongruenceWitness {
    unsigned k = 0;
    unsigned nu = 0;          // 2-adic valuation of k
    unsigned m = 0;
    unsigned n = 0;
    mpz_class x;
    mpz_class y;
    mpz_class z;
    WitnessCase case_tag = WitnessCase::EvenK;
    unsigned s = 0;           // odd-k proof internals; 0 when k is even
    unsigned a = 0;

    mpz_class modulus() const {        // 2^(2m+2n+1)
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), 2, 2 * m + 2 * n + 1);
        return t;
    }
};

// Largest e with 2^e | k. k = 0 rejected.
unsigned two_adic_valuation(const mpz_class& k);

// The constructive solution (m, n, x) for k >= 2. Even k gives (1, 1, 1);
// odd k locates (s, a) from the low bits of 3^(k-1) - 1 and applies the
// odd/even-s branch. The result is checked with verify_congruence before
// returning; a check failure is an invariant_error.
struct CongruenceSolution {
    unsigned m, n;
    mpz_class x;
    WitnessCase case_tag;
    unsigned s, a;
};
CongruenceSolution solve_congruence(unsigned k);

// Independent modular check of the two congruences. Deliberately does not
// share any of solve_congruence's case analysis.
bool verify_congruence(unsigned k, unsigned m, unsigned n, const mpz_class& x);

// Completes (m, n, x) to the full witness: nu(k), least positive y with
// k 2^-nu(k) y == x mod 2^(2m+2n+1), and z.
CongruenceWitness shift_witness(unsigned k);

// Same, but skipping the per-k cache (used by tests).
CongruenceWitness shift_witness_uncached(unsigned k);

// The two Thue-Morse identities t(1+x) = t(x), t(1+x 3^(k-1)) = 1 - t(x 3^(k-1)),
// plus the bit-exact binary suffix forms:
//   x        ends in  0 1^(2m-1)
//   x 3^(k-1) ends in 0 1^(2n)
bool check_tm_identities(const CongruenceWitness& w);

// Least N for which both explicit threshold inequalities hold, by exact
// big-integer comparison:
//   (i)  2^k (2^(2m+2n+1))^k (5 2^(N-2))^(k-1)          < 2^(kN - nu)
//   (ii) 2^(k-1) (2^(2m+2n+1))^(k-1) 2^(floor(lam N)(k-1)) < 2^(kN - nu)
// with lam = 1 + 1/(2(k-1)). Scanned upward from N = 2 (the (i) left side
// needs N >= 2 to be integral).
unsigned min_valid_N(const CongruenceWitness& w);

// The two inequalities above at a given N, individually (exposed for tests
// and the below-threshold sanity property).
bool threshold_ineq_binomial(const CongruenceWitness& w, unsigned N);
bool threshold_ineq_lower_powers(const CongruenceWitness& w, unsigned N);

// floor(lam * N) with lam = 1 + 1/(2(k-1)), computed in integers.
unsigned lambda_floor(unsigned k, unsigned N);

// kappa(N) = k N - nu(k).
inline unsigned long kappa(const CongruenceWitness& w, unsigned N) {
    return static_cast<unsigned long>(w.k) * N - w.nu;
}

} // namespace tmpow
