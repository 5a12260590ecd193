#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tmpow/witness.hpp"

namespace tmpow {

enum class LemmaId { ShiftInvariance22, SpecialPoints23, LowerPowers24 };

const char* to_string(LemmaId id);

// Outcome of sweeping one lemma's j-range. An empty failed list is the
// expected result; any entry would refute the verified equality and is
// reported, never swallowed.
struct LemmaReport {
    unsigned k = 0;
    unsigned N = 0;
    LemmaId lemma = LemmaId::ShiftInvariance22;
    unsigned r = 0;                  // lower-power exponent (lemma 2.4 only)
    uint64_t j_tested = 0;
    std::vector<mpz_class> j_failed; // ascending
    bool sampled = false;
    std::string plan_note;
    int sign_at_special = 0;         // observed sign of u(2^N + 1) (lemma 2.3)
};

// u(j) = t((y 2^(kappa+1) + j)^k) - t((y 2^kappa + j)^k), in {-1, 0, 1}.
int u_value(const CongruenceWitness& w, unsigned N, const mpz_class& j);

// Same difference for a lower power r <= k.
int u_value_pow(const CongruenceWitness& w, unsigned N, const mpz_class& j, unsigned r);

// Proof-internal binomial terms A_(l,j) = C(k,l) y^l j^(k-l), l = 0..k.
std::vector<mpz_class> binomial_terms(const CongruenceWitness& w, const mpz_class& j);

// The strict bound A_(l,j) < 2^(k N - nu(k)) for all l >= 1.
bool binomial_bound_holds(const CongruenceWitness& w, unsigned N, const mpz_class& j);

// The mod-2 decomposition of t((y 2^(kappa+delta) + j)^k) into
// t(j^k) + t(z j^(k-1)) + sum_(l>=2) t(A_(l,j)), for delta in {0,1}.
bool congruence_identity_holds(const CongruenceWitness& w, unsigned N,
                               const mpz_class& j, int delta);

// A deterministic selection of j values from a virtual index range
// [0, range_end] (inclusive): all low indices up to budget/2, the top 16
// boundary indices, then seeded pseudo-random fill. Sorted, distinct.
std::vector<mpz_class> sample_plan(const mpz_class& range_end, uint64_t budget,
                                   uint64_t seed);

// Sweep controller.
struct SweepConfig {
    uint64_t full_range_budget = uint64_t{1} << 26;
    uint64_t sample_budget = 1000000;
    uint64_t seed = 0;
    unsigned workers = 1;
};

// Lemma 2.2: every j in {0..2^N-1} and j = 2^N + 2h (h = 0..2^(N-3)) gives
// u(j) = 0. `plan` carries explicit j values, all of which must lie in the
// lemma's range. Deterministic output regardless of worker count.
LemmaReport verify_shift_invariance(const CongruenceWitness& w, unsigned N,
                                    const std::vector<mpz_class>& plan,
                                    unsigned workers = 1,
                                    bool enforce_threshold = true);

// Builds the default plan for lemma 2.2 (full range when it fits the budget,
// otherwise sample_plan mapped through the range structure).
std::vector<mpz_class> lemma22_plan(const CongruenceWitness& w, unsigned N,
                                    const SweepConfig& cfg, bool* sampled,
                                    std::string* note);

// Lemma 2.3: |u(2^N + 1)| = 1 and u(2^N + 3) = 0.
LemmaReport verify_special_j(const CongruenceWitness& w, unsigned N,
                             bool enforce_threshold = true);

// Lemma 2.4 for one r in 1..k-1 over j in {0..2^(floor(lambda N))}.
LemmaReport verify_lower_powers(const CongruenceWitness& w, unsigned N, unsigned r,
                                const std::vector<mpz_class>& plan,
                                unsigned workers = 1,
                                bool enforce_threshold = true);

std::vector<mpz_class> lemma24_plan(const CongruenceWitness& w, unsigned N,
                                    const SweepConfig& cfg, bool* sampled,
                                    std::string* note);

} // namespace tmpow
