#include "tmpow/witness.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "tmpow/thue_morse.hpp"
#include "tmpow/util.hpp"

namespace tmpow {

const char* to_string(WitnessCase c) {
    switch (c) {
        case WitnessCase::EvenK:   return "even-k";
        case WitnessCase::OddSOdd: return "odd-s-odd";
        case WitnessCase::OddSEven:return "odd-s-even";
    }
    return "?";
}

unsigned two_adic_valuation(const mpz_class& k) {
    if (sgn(k) == 0) throw std::invalid_argument("two_adic_valuation: k = 0");
    return static_cast<unsigned>(mpz_scan1(k.get_mpz_t(), 0));
}

static mpz_class pow2(unsigned long e) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, e);
    return t;
}

CongruenceSolution solve_congruence(unsigned k) {
    if (k < 2) throw std::invalid_argument("solve_congruence: k must be >= 2");
    CongruenceSolution sol;
    if (k % 2 == 0) {
        sol = {1, 1, mpz_class(1), WitnessCase::EvenK, 0, 0};
    } else {
        // 3^(k-1) = 1 + 2^s + a 2^(s+1) (mod 2^(s+2)); s is the lowest set
        // bit of 3^(k-1) - 1 and a the bit above it. s >= 3 for odd k >= 3.
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, k - 1);
        mpz_class w = p - 1;
        unsigned s = static_cast<unsigned>(mpz_scan1(w.get_mpz_t(), 0));
        unsigned a = static_cast<unsigned>(mpz_tstbit(p.get_mpz_t(), s + 1));
        if (s < 3) throw invariant_error("solve_congruence: s < 3 for odd k");
        if (s % 2 == 1) {
            unsigned u = (s - 1) / 2;
            mpz_class x = pow2(2 * u + 1) - 1 + (1 - a) * pow2(2 * u + 2);
            sol = {u + 1, u + 1, x, WitnessCase::OddSOdd, s, a};
        } else {
            unsigned u = s / 2;
            mpz_class x = pow2(2 * u + 1) - 1 + pow2(2 * u + 2);
            sol = {u + 1, u, x, WitnessCase::OddSEven, s, a};
        }
    }
    if (!verify_congruence(k, sol.m, sol.n, sol.x))
        throw invariant_error("solve_congruence: constructed x fails the congruences");
    return sol;
}

bool verify_congruence(unsigned k, unsigned m, unsigned n, const mpz_class& x) {
    if (k < 2 || m == 0 || n == 0 || sgn(x) <= 0) return false;
    mpz_class m1 = pow2(2 * m), m2 = pow2(2 * n + 1);
    if ((x - (pow2(2 * m - 1) - 1)) % m1 != 0) return false;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, k - 1);
    if ((p * x - (pow2(2 * n) - 1)) % m2 != 0) return false;
    return true;
}

CongruenceWitness shift_witness_uncached(unsigned k) {
    CongruenceSolution sol = solve_congruence(k);
    CongruenceWitness w;
    w.k = k;
    w.nu = two_adic_valuation(mpz_class(k));
    w.m = sol.m;
    w.n = sol.n;
    w.x = sol.x;
    w.case_tag = sol.case_tag;
    w.s = sol.s;
    w.a = sol.a;

    mpz_class mod = w.modulus();
    mpz_class odd = mpz_class(k) >> w.nu;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), odd.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw invariant_error("shift_witness: odd part not invertible");
    w.y = (inv * w.x) % mod;
    if (sgn(w.y) == 0) w.y = mod;     // least positive, not least nonnegative
    w.z = odd * w.y;
    return w;
}

CongruenceWitness shift_witness(unsigned k) {
    static std::map<unsigned, CongruenceWitness> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    CongruenceWitness w = shift_witness_uncached(k);
    cache.emplace(k, w);
    return w;
}

static bool suffix_is(const mpz_class& v, unsigned ones, unsigned zero_at) {
    // bits 0..ones-1 set, bit `zero_at` clear (zero_at == ones).
    for (unsigned i = 0; i < ones; ++i)
        if (!mpz_tstbit(v.get_mpz_t(), i)) return false;
    return mpz_tstbit(v.get_mpz_t(), zero_at) == 0;
}

bool check_tm_identities(const CongruenceWitness& w) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, w.k - 1);
    mpz_class x3 = w.x * p;
    if (tm(1 + w.x) != tm(w.x)) return false;
    if (tm(1 + x3) != 1 - tm(x3)) return false;
    // (x)_2 = w1 0 1^(2m-1); (x 3^(k-1))_2 = w2 0 1^(2n)
    if (!suffix_is(w.x, 2 * w.m - 1, 2 * w.m - 1)) return false;
    if (!suffix_is(x3, 2 * w.n, 2 * w.n)) return false;
    return true;
}

unsigned lambda_floor(unsigned k, unsigned N) {
    // floor(N (2k-1) / (2k-2))
    unsigned long num = static_cast<unsigned long>(N) * (2ul * k - 1);
    return static_cast<unsigned>(num / (2ul * k - 2));
}

bool threshold_ineq_binomial(const CongruenceWitness& w, unsigned N) {
    if (N < 2) return false;
    mpz_class lhs = pow2(w.k) * pow2((2ul * w.m + 2 * w.n + 1) * w.k);
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, w.k - 1);
    lhs *= five * pow2(static_cast<unsigned long>(N - 2) * (w.k - 1));
    return lhs < pow2(kappa(w, N));
}

bool threshold_ineq_lower_powers(const CongruenceWitness& w, unsigned N) {
    mpz_class lhs = pow2(w.k - 1) * pow2((2ul * w.m + 2 * w.n + 1) * (w.k - 1));
    lhs *= pow2(static_cast<unsigned long>(lambda_floor(w.k, N)) * (w.k - 1));
    return lhs < pow2(kappa(w, N));
}

unsigned min_valid_N(const CongruenceWitness& w) {
    for (unsigned N = 2;; ++N) {
        if (threshold_ineq_binomial(w, N) && threshold_ineq_lower_powers(w, N))
            return N;
        if (N > 100000) throw invariant_error("min_valid_N: no threshold found");
    }
}

} // namespace tmpow
