#include "tmpow/thue_morse.hpp"

#include <algorithm>
#include <stdexcept>

#include "tmpow/util.hpp"

namespace tmpow {

uint64_t BinaryWord::window(uint64_t i, unsigned m) const {
    uint64_t word = i >> 6;
    unsigned shift = static_cast<unsigned>(i & 63);
    uint64_t lo = limbs_[word] >> shift;
    if (shift != 0 && word + 1 < limbs_.size())
        lo |= limbs_[word + 1] << (64 - shift);
    return m == 64 ? lo : (lo & ((1ull << m) - 1));
}

unsigned long s2(const mpz_class& n) {
    if (sgn(n) < 0) throw std::invalid_argument("s2: negative argument");
    return mpz_popcount(n.get_mpz_t());
}

int tm(const mpz_class& n) {
    if (sgn(n) <= 0) throw std::invalid_argument("tm: argument must be >= 1");
    // Parity of the popcount = parity of the XOR of all limbs.
    const mpz_srcptr z = n.get_mpz_t();
    mp_limb_t acc = 0;
    for (mp_size_t i = 0; i < mpz_size(z); ++i)
        acc ^= mpz_getlimbn(z, i);
    return __builtin_parityll(acc);
}

int tm_pow(const mpz_class& n, unsigned k) {
    if (k == 0) throw std::invalid_argument("tm_pow: k must be >= 1");
    if (sgn(n) <= 0) throw std::invalid_argument("tm_pow: n must be >= 1");
    if (k == 1) return tm(n);
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), k);
    return tm(p);
}

BinaryWord tm_word(const mpz_class& start, uint64_t length, unsigned k) {
    if (k == 0) throw std::invalid_argument("tm_word: k must be >= 1");
    if (sgn(start) <= 0) throw std::invalid_argument("tm_word: start must be >= 1");
    BinaryWord w(start, length);
    if (length == 0) return w;

    mpz_class last = start + static_cast<unsigned long>(length - 1);
    // n^k fits in 128 bits -> pure machine-word loop.
    if (mpz_sizeinbase(last.get_mpz_t(), 2) * k <= 127 && start.fits_ulong_p()) {
        uint64_t n0 = start.get_ui();
        for (uint64_t i = 0; i < length; ++i) {
            unsigned __int128 p = 1;
            for (unsigned e = 0; e < k; ++e) p *= (n0 + i);
            w.set(i, tm_u128(p));
        }
        return w;
    }
    mpz_class n = start, p;
    for (uint64_t i = 0; i < length; ++i, ++n) {
        mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), k);
        w.set(i, tm(p));
    }
    return w;
}

} // namespace tmpow
