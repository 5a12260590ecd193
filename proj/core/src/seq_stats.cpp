#include "tmpow/seq_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

#include "tmpow/util.hpp"

namespace tmpow {

BinaryWord power_word(unsigned k, uint64_t prefix_len) {
    return tm_word(mpz_class(1), prefix_len, k);
}

ComplexityReport subword_complexity(const BinaryWord& word, unsigned m_max) {
    if (m_max == 0 || m_max > 28)
        throw std::invalid_argument("subword_complexity: m_max in 1..28");
    if (word.size() < m_max)
        throw std::invalid_argument("subword_complexity: word shorter than m_max");
    ComplexityReport rep;
    rep.prefix_len = word.size();
    for (unsigned m = 1; m <= m_max; ++m) {
        std::vector<bool> seen(uint64_t{1} << m, false);
        uint64_t count = 0;
        uint64_t windows = word.size() - m + 1;
        for (uint64_t i = 0; i < windows; ++i) {
            uint64_t code = word.window(i, m);
            if (!seen[code]) { seen[code] = true; ++count; }
        }
        rep.m_values.push_back(m);
        rep.pf.push_back(count);
    }
    rep.entropy_estimate = std::log(static_cast<double>(rep.pf.back())) / m_max;
    // p_f(m+1) >= p_f(m) is asserted only with enough prefix behind it.
    for (unsigned m = 1; m < m_max; ++m) {
        if (rep.prefix_len >= (uint64_t{1} << std::min<unsigned>(m + 2, 63))) {
            rep.monotone_checked = true;
            if (rep.pf[m] < rep.pf[m - 1]) rep.monotone_ok = false;
        }
    }
    return rep;
}

namespace {

// ceil(2^(m / 2^(k-2))) as an exact integer; directed rounding cross-check.
mpz_class moshe_bound(unsigned k, unsigned m) {
    if (k < 2) throw std::invalid_argument("moshe_bound: k >= 2");
    unsigned denom_log = k - 2;
    if (m == 0) return 1;
    if (denom_log >= 32) return 2;            // 2^(m/2^(k-2)) is barely above 1
    uint64_t denom = uint64_t{1} << denom_log;
    uint64_t q = m / denom, r = m % denom;
    mpz_class base;
    mpz_ui_pow_ui(base.get_mpz_t(), 2, q);
    if (r == 0) return base;
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        mpfr_t x, lo, hi;
        mpfr_inits2(prec, x, lo, hi, nullptr);
        mpfr_set_ui(x, r, MPFR_RNDN);
        mpfr_div_ui(x, x, denom, MPFR_RNDN);  // exact: r / 2^e
        mpfr_exp2(lo, x, MPFR_RNDD);
        mpfr_exp2(hi, x, MPFR_RNDU);
        mpz_class clo, chi;
        mpfr_get_z(clo.get_mpz_t(), lo, MPFR_RNDU);   // ceil
        mpfr_get_z(chi.get_mpz_t(), hi, MPFR_RNDU);
        mpfr_clears(x, lo, hi, nullptr);
        if (clo == chi) return base * clo;
        if (prec > (1 << 16))
            throw invariant_error("moshe_bound: ceiling not separable");
    }
}

} // namespace

MosheReport moshe_check(unsigned k, unsigned m_max, uint64_t prefix_len) {
    if (k < 2) throw std::invalid_argument("moshe_check: k >= 2");
    MosheReport rep;
    rep.k = k;
    rep.prefix_len = prefix_len;
    BinaryWord w = power_word(k, prefix_len);
    ComplexityReport cx = subword_complexity(w, m_max);
    rep.m_values = cx.m_values;
    rep.counts = cx.pf;
    rep.all_ok = true;
    for (unsigned m = 1; m <= m_max; ++m) {
        mpz_class bound = moshe_bound(k, m);
        rep.bounds.push_back(bound);
        if (mpz_class(static_cast<unsigned long>(rep.counts[m - 1])) < bound)
            rep.all_ok = false;
    }
    return rep;
}

FrequencyReport block_frequencies_of(const BinaryWord& w, unsigned k_label, unsigned m) {
    if (m == 0 || m > 16) throw std::invalid_argument("block_frequencies: m in 1..16");
    if (w.size() < m) throw std::invalid_argument("block_frequencies: prefix too short");
    FrequencyReport rep;
    rep.k = k_label;
    rep.m = m;
    rep.prefix_len = w.size();
    rep.windows = w.size() - m + 1;
    rep.counts.assign(uint64_t{1} << m, 0);
    for (uint64_t i = 0; i < rep.windows; ++i)
        ++rep.counts[w.window(i, m)];
    double expect = 1.0 / static_cast<double>(uint64_t{1} << m);
    double worst = 0.0;
    for (uint64_t c : rep.counts) {
        double f = static_cast<double>(c) / static_cast<double>(rep.windows);
        worst = std::max(worst, std::fabs(f - expect) / expect);
    }
    rep.max_rel_dev = worst;
    return rep;
}

FrequencyReport block_frequencies(unsigned k, unsigned m, uint64_t prefix_len) {
    return block_frequencies_of(power_word(k, prefix_len), k, m);
}

// ---------------------------------------------------------------------------
// cube detection: anchored LCE with double rolling hashes, verified hits
// ---------------------------------------------------------------------------

namespace {

struct HashedWord {
    static constexpr uint64_t MOD1 = (uint64_t{1} << 61) - 1;    // Mersenne
    static constexpr uint64_t B1 = 131, B2 = 137;

    const BinaryWord* w;
    uint64_t n;
    std::vector<uint64_t> h1f, h2f, h1b, h2b, p1, p2;

    static uint64_t mulmod(uint64_t a, uint64_t b) {
        unsigned __int128 c = static_cast<unsigned __int128>(a) * b;
        uint64_t lo = static_cast<uint64_t>(c & MOD1);
        uint64_t hi = static_cast<uint64_t>(c >> 61);
        uint64_t s = lo + hi;
        if (s >= MOD1) s -= MOD1;
        return s;
    }
    static uint64_t addmod(uint64_t a, uint64_t b) {
        uint64_t s = a + b;
        if (s >= MOD1) s -= MOD1;
        return s;
    }
    static uint64_t submod(uint64_t a, uint64_t b) { return addmod(a, MOD1 - b); }

    explicit HashedWord(const BinaryWord& word) : w(&word), n(word.size()) {
        h1f.resize(n + 1, 0);
        h2f.resize(n + 1, 0);
        h1b.resize(n + 1, 0);
        h2b.resize(n + 1, 0);
        p1.resize(n + 1, 1);
        p2.resize(n + 1, 1);
        for (uint64_t i = 0; i < n; ++i) {
            uint64_t c = static_cast<uint64_t>(word[i]) + 1;
            h1f[i + 1] = addmod(mulmod(h1f[i], B1), c);
            h2f[i + 1] = addmod(mulmod(h2f[i], B2), c);
            p1[i + 1] = mulmod(p1[i], B1);
            p2[i + 1] = mulmod(p2[i], B2);
        }
        for (uint64_t i = n; i-- > 0;) {
            uint64_t c = static_cast<uint64_t>(word[i]) + 1;
            h1b[i] = addmod(mulmod(h1b[i + 1], B1), c);
            h2b[i] = addmod(mulmod(h2b[i + 1], B2), c);
        }
    }

    // hash of [i, i+len)
    std::pair<uint64_t, uint64_t> fwd(uint64_t i, uint64_t len) const {
        return {submod(h1f[i + len], mulmod(h1f[i], p1[len])),
                submod(h2f[i + len], mulmod(h2f[i], p2[len]))};
    }
    // hash of [i, i+len) read from the backward tables (for left extensions)
    std::pair<uint64_t, uint64_t> bwd(uint64_t i, uint64_t len) const {
        return {submod(h1b[i], mulmod(h1b[i + len], p1[len])),
                submod(h2b[i], mulmod(h2b[i + len], p2[len]))};
    }

    // longest common extension to the right of positions i, j, capped
    uint64_t lce_right(uint64_t i, uint64_t j, uint64_t cap) const {
        uint64_t maxlen = std::min({cap, n - i, n - j});
        uint64_t lo = 0, hi = maxlen;
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) / 2;
            if (fwd(i, mid) == fwd(j, mid)) lo = mid;
            else                            hi = mid - 1;
        }
        return lo;
    }
    // longest common extension to the left of positions ending at i-1, j-1
    uint64_t lce_left(uint64_t i, uint64_t j, uint64_t cap) const {
        uint64_t maxlen = std::min({cap, i, j});
        uint64_t lo = 0, hi = maxlen;
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) / 2;
            if (bwd(i - mid, mid) == bwd(j - mid, mid)) lo = mid;
            else                                        hi = mid - 1;
        }
        return lo;
    }
};

bool verify_cube(const BinaryWord& w, uint64_t pos, uint64_t p) {
    if (pos + 3 * p > w.size()) return false;
    for (uint64_t x = pos; x < pos + 2 * p; ++x)
        if (w[x] != w[x + p]) return false;
    return true;
}

} // namespace

CubeReport find_cube(const BinaryWord& word) {
    CubeReport rep;
    uint64_t n = word.size();
    if (n < 3) return rep;
    HashedWord H(word);
    for (uint64_t p = 1; 3 * p <= n; ++p) {
        for (uint64_t a = p; a + p <= n; a += p) {
            // extensions around the anchor pair (a, a+p)
            uint64_t r = H.lce_right(a, a + p, 2 * p);
            uint64_t l = H.lce_left(a, a + p, 2 * p);
            if (l + r >= 2 * p) {
                // run of period p and length >= 3p; locate a cube start
                uint64_t start = a - l;
                if (verify_cube(word, start, p)) {
                    rep.cube_free = false;
                    rep.position = start;
                    rep.period = p;
                    return rep;
                }
                // hash collision: fall through (extremely unlikely twice)
            }
        }
    }
    return rep;
}

bool cube_free_check(uint64_t prefix_len) {
    if (prefix_len < 3) return true;
    return find_cube(power_word(1, prefix_len)).cube_free;
}

// ---------------------------------------------------------------------------
// affine digit-complexity comparison
// ---------------------------------------------------------------------------

AffineReport affine_complexity_compare(const mpq_class& q1, const mpq_class& q2,
                                       unsigned base,
                                       const std::vector<unsigned>& xi_digits,
                                       unsigned m_max) {
    if (base < 2) throw std::invalid_argument("affine: base >= 2");
    if (q1 == 0) throw std::invalid_argument("affine: q1 must be nonzero");
    if (m_max == 0 || m_max > 24)
        throw std::invalid_argument("affine: m_max in 1..24");
    if (xi_digits.size() < m_max)
        throw std::invalid_argument("affine: digit prefix shorter than m_max");

    AffineReport rep;
    rep.base = base;

    // xi in [X, X + base^-L]
    mpq_class X = 0, scale = 1;
    for (unsigned d : xi_digits) {
        if (d >= base) throw std::invalid_argument("affine: digit out of range");
        scale /= base;
        X += mpq_class(d) * scale;
    }
    mpq_class lo = q1 * X + q2, hi = q1 * (X + scale) + q2;
    if (lo > hi) std::swap(lo, hi);

    // integer part must agree on the whole interval
    mpz_class flo, fhi;
    mpz_fdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (flo != fhi) {
        rep.truncated_by_carry = true;
        rep.integer_part = flo;
        return rep;
    }
    rep.integer_part = flo;
    mpq_class frac_lo = lo - mpq_class(flo), frac_hi = hi - mpq_class(flo);

    // emit digits of the fractional part while certain
    std::vector<unsigned> out;
    uint64_t target = xi_digits.size();
    for (uint64_t i = 0; i < target; ++i) {
        frac_lo *= base;
        frac_hi *= base;
        mpz_class dlo, dhi;
        mpz_fdiv_q(dlo.get_mpz_t(), frac_lo.get_num().get_mpz_t(), frac_lo.get_den().get_mpz_t());
        mpz_fdiv_q(dhi.get_mpz_t(), frac_hi.get_num().get_mpz_t(), frac_hi.get_den().get_mpz_t());
        if (dlo != dhi) { rep.truncated_by_carry = true; break; }
        unsigned d = static_cast<unsigned>(dlo.get_ui());
        out.push_back(d);
        frac_lo -= mpq_class(dlo);
        frac_hi -= mpq_class(dlo);
    }
    rep.digits_used = out.size();

    // complexity profiles (binary words only use the packed path; for
    // base > 2 fall back to a flat comparison over small m)
    auto complexity_of = [&](const std::vector<unsigned>& digs, unsigned m) -> uint64_t {
        if (digs.size() < m) return 0;
        if (base == 2) {
            BinaryWord w(mpz_class(1), digs.size());
            for (uint64_t i = 0; i < digs.size(); ++i) w.set(i, static_cast<int>(digs[i]));
            std::vector<bool> seen(uint64_t{1} << m, false);
            uint64_t cnt = 0;
            for (uint64_t i = 0; i + m <= digs.size(); ++i) {
                uint64_t code = w.window(i, m);
                if (!seen[code]) { seen[code] = true; ++cnt; }
            }
            return cnt;
        }
        std::vector<std::vector<unsigned>> blocks;
        for (uint64_t i = 0; i + m <= digs.size(); ++i)
            blocks.emplace_back(digs.begin() + i, digs.begin() + i + m);
        std::sort(blocks.begin(), blocks.end());
        return std::unique(blocks.begin(), blocks.end()) - blocks.begin();
    };

    for (unsigned m = 1; m <= m_max && m <= rep.digits_used; ++m) {
        uint64_t pa = complexity_of(out, m);
        uint64_t px = complexity_of(xi_digits, m);
        rep.m_values.push_back(m);
        rep.p_affine.push_back(pa);
        rep.p_xi.push_back(px);
        rep.ratio.push_back(px == 0 ? 0.0 : static_cast<double>(pa) / static_cast<double>(px));
    }
    return rep;
}

} // namespace tmpow
