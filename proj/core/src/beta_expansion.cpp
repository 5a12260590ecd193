#include "tmpow/beta_expansion.hpp"

#include <map>

#include "tmpow/util.hpp"

namespace tmpow {

namespace {

// Certified sign of an exact nonzero element, by ball refinement.
int exact_sign(const FieldElement& v, mpfr_prec_t ceiling) {
    if (v.is_zero()) return 0;
    for (mpfr_prec_t prec = 64; prec <= ceiling; prec *= 2) {
        Ball b = v.embed_beta(prec);
        if (b.certainly_positive()) return 1;
        if (b.certainly_negative()) return -1;
    }
    throw budget_error("exact_sign: precision ceiling reached");
}

} // namespace

BetaExpansion beta_expand(const FieldElement& num, const mpz_class& den,
                          const NumberField& field, uint64_t max_digits,
                          const ExpandBudgets& budgets) {
    if (sgn(den) <= 0) throw std::invalid_argument("beta_expand: denominator must be positive");
    // 0 <= x < 1, decided exactly.
    if (exact_sign(num, budgets.floor_prec_ceiling) < 0)
        throw std::invalid_argument("beta_expand: x < 0");
    FieldElement xm1 = num - FieldElement::from_int(field, den);
    if (exact_sign(xm1, budgets.floor_prec_ceiling) >= 0)
        throw std::invalid_argument("beta_expand: x >= 1");

    BetaExpansion e;
    e.den = den;
    FieldElement v = num;
    e.orbit_num.push_back(v);
    FieldElement beta_el = FieldElement::beta(field);

    for (uint64_t step = 0; step < max_digits; ++step) {
        if (v.is_zero()) {
            e.terminated = true;
            // one extra zero state so detect_period sees the fixed point
            e.orbit_num.push_back(v);
            break;
        }
        FieldElement bx = v * beta_el;

        // digit = floor(bx / den): ball refinement with exact tie detection
        long digit = -1;
        for (mpfr_prec_t prec = 64;; prec *= 2) {
            if (prec > budgets.floor_prec_ceiling)
                throw budget_error("beta_expand: floor undecidable at precision ceiling");
            Ball b = bx.embed_beta(prec).mul(Ball::from_mpq(mpq_class(1, den), prec));
            mpfr_t lo, hi;
            mpfr_init2(lo, b.prec());
            mpfr_init2(hi, b.prec());
            b.lower(lo);
            b.upper(hi);
            long flo = mpfr_get_si(lo, MPFR_RNDD);
            long fhi = mpfr_get_si(hi, MPFR_RNDD);
            mpfr_clear(lo);
            mpfr_clear(hi);
            if (flo == fhi) { digit = flo; break; }
            // exact tie: bx/den equal to an integer m in (flo, fhi]
            bool hit = false;
            for (long m = flo + 1; m <= fhi && !hit; ++m) {
                FieldElement diff = bx - FieldElement::from_int(field, den * m);
                if (diff.is_zero()) { digit = m; hit = true; }
            }
            if (hit) break;
        }
        if (digit < 0)
            throw invariant_error("beta_expand: negative digit from a state in [0,1)");
        e.digits.push_back(static_cast<unsigned>(digit));
        v = bx - FieldElement::from_int(field, den * digit);
        e.orbit_num.push_back(v);
    }
    return e;
}

BallExpansion beta_expand_ball(const Ball& x, const NumberField& field,
                               uint64_t max_digits) {
    BallExpansion out;
    mpfr_prec_t prec = x.prec();
    Ball beta = field.beta(prec);
    Ball cur = x;
    {
        mpfr_t lo;
        mpfr_init2(lo, prec);
        cur.lower(lo);
        bool ok = mpfr_sgn(lo) >= 0 && cur.certainly_less(Ball::exact(1L, prec));
        mpfr_clear(lo);
        if (!ok) throw std::invalid_argument("beta_expand_ball: enclosure not within [0,1)");
    }
    for (uint64_t step = 0; step < max_digits; ++step) {
        Ball y = cur.mul(beta);
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        y.lower(lo);
        y.upper(hi);
        long flo = mpfr_get_si(lo, MPFR_RNDD);
        long fhi = mpfr_get_si(hi, MPFR_RNDD);
        mpfr_clears(lo, hi, nullptr);
        if (flo != fhi || flo < 0) {
            out.exhausted_certainty = true;
            break;
        }
        out.digits.push_back(static_cast<unsigned>(flo));
        cur = y.sub(Ball::exact(static_cast<long>(flo), prec));
    }
    return out;
}

std::optional<std::pair<uint64_t, uint64_t>> detect_period(const BetaExpansion& e) {
    std::map<std::vector<mpz_class>, uint64_t> seen;
    for (uint64_t i = 0; i < e.orbit_num.size(); ++i) {
        auto [it, fresh] = seen.emplace(e.orbit_num[i].coords(), i);
        if (!fresh) return std::make_pair(it->second, i - it->second);
    }
    return std::nullopt;
}

bool reconstruction_holds(const BetaExpansion& e, const FieldElement& num,
                          const mpz_class& den, const NumberField& field) {
    if (e.den != den) return false;
    size_t len = e.digits.size();
    FieldElement beta_el = FieldElement::beta(field);
    // beta^len * num - den * sum d_i beta^(len-i) - tail = 0, where the tail
    // state is orbit[len] (or 0 after termination).
    FieldElement acc = num;                       // will become beta^len * num
    FieldElement digits_part = FieldElement::zero(field);
    for (size_t i = 0; i < len; ++i) {
        // Horner: after processing digit i, digits_part = sum_(j<=i) d_j beta^(i-j... )
        digits_part = digits_part * beta_el +
                      FieldElement::from_int(field, mpz_class(e.digits[i]));
        acc = acc * beta_el;
    }
    const FieldElement& tail = e.terminated && e.orbit_num.size() < len + 1
                                   ? FieldElement::zero(field)
                                   : e.orbit_num[len];
    FieldElement lhs = acc - digits_part.mul_int(den) - tail;
    return lhs.is_zero();
}

} // namespace tmpow
