#include "tmpow/ball.hpp"

#include <algorithm>
#include <stdexcept>

#include "tmpow/util.hpp"

namespace tmpow {

namespace {
// Quantities like beta^(3 y 2^kappa) overflow MPFR's conservative default
// exponent range (2^30); widen to the platform maximum once per thread.
thread_local bool g_exp_range_widened = false;
void ensure_exponent_range() {
    if (!g_exp_range_widened) {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
        g_exp_range_widened = true;
    }
}
} // namespace

Ball::Ball(mpfr_prec_t prec) {
    ensure_exponent_range();
    mpfr_init2(c_, prec);
    mpfr_init2(r_, kRadiusPrec);
    mpfr_set_zero(c_, 1);
    mpfr_set_zero(r_, 1);
}

Ball::Ball(const Ball& o) {
    mpfr_init2(c_, mpfr_get_prec(o.c_));
    mpfr_init2(r_, kRadiusPrec);
    mpfr_set(c_, o.c_, MPFR_RNDN);
    mpfr_set(r_, o.r_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept {
    c_[0] = o.c_[0];
    r_[0] = o.r_[0];
    mpfr_init2(o.c_, 2);    // leave the source in a destructible state
    mpfr_init2(o.r_, 2);
}

Ball& Ball::operator=(const Ball& o) {
    if (this != &o) {
        mpfr_set_prec(c_, mpfr_get_prec(o.c_));
        mpfr_set(c_, o.c_, MPFR_RNDN);
        mpfr_set(r_, o.r_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
    if (this != &o) {
        mpfr_swap(c_, o.c_);
        mpfr_swap(r_, o.r_);
    }
    return *this;
}

Ball::~Ball() {
    mpfr_clear(c_);
    mpfr_clear(r_);
}

void Ball::bump_radius_ulp(int ternary) {
    if (ternary == 0) return;
    if (!mpfr_number_p(c_))
        throw budget_error("Ball: exponent overflow (center not finite)");
    if (mpfr_zero_p(c_))
        throw invariant_error("Ball: inexact rounding to zero (exponent underflow)");
    // |error| <= ulp(c) = 2^(exp - prec); use one full ulp (>= the 1/2 ulp
    // bound for round-to-nearest) to stay safe.
    mpfr_t ulp;
    mpfr_init2(ulp, kRadiusPrec);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(c_) - mpfr_get_prec(c_), MPFR_RNDU);
    mpfr_add(r_, r_, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

void Ball::add_radius(const mpfr_t e) {
    mpfr_add(r_, r_, e, MPFR_RNDU);
}

Ball Ball::exact(const mpz_class& v, mpfr_prec_t prec) {
    // Widen precision if needed so integer inputs are always exact.
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    Ball b(std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(bits + 1)));
    int t = mpfr_set_z(b.c_, v.get_mpz_t(), MPFR_RNDN);
    if (t != 0) throw invariant_error("Ball::exact: integer did not fit");
    return b;
}

Ball Ball::exact(long v, mpfr_prec_t prec) {
    Ball b(std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_si(b.c_, v, MPFR_RNDN);
    return b;
}

Ball Ball::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_q(b.c_, v.get_mpq_t(), MPFR_RNDN);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::point(const mpfr_t v, mpfr_prec_t prec) {
    Ball b(std::max(prec, mpfr_get_prec(v)));
    mpfr_set(b.c_, v, MPFR_RNDN);   // exact: destination at least as wide
    return b;
}

Ball Ball::add(const Ball& o) const {
    Ball out(std::max(prec(), o.prec()));
    int t = mpfr_add(out.c_, c_, o.c_, MPFR_RNDN);
    mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
    out.bump_radius_ulp(t);
    return out;
}

Ball Ball::sub(const Ball& o) const {
    Ball out(std::max(prec(), o.prec()));
    int t = mpfr_sub(out.c_, c_, o.c_, MPFR_RNDN);
    mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
    out.bump_radius_ulp(t);
    return out;
}

Ball Ball::mul(const Ball& o) const {
    Ball out(std::max(prec(), o.prec()));
    int t = mpfr_mul(out.c_, c_, o.c_, MPFR_RNDN);
    // |xy - cx cy| <= |cx| ry + |cy| rx + rx ry
    mpfr_t a, b, tmp;
    mpfr_init2(a, kRadiusPrec);
    mpfr_init2(b, kRadiusPrec);
    mpfr_init2(tmp, kRadiusPrec);
    mpfr_abs(a, c_, MPFR_RNDU);
    mpfr_abs(b, o.c_, MPFR_RNDU);
    mpfr_mul(tmp, a, o.r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, tmp, MPFR_RNDU);
    mpfr_mul(tmp, b, r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, tmp, MPFR_RNDU);
    mpfr_mul(tmp, r_, o.r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, tmp, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
    mpfr_clear(tmp);
    out.bump_radius_ulp(t);
    return out;
}

Ball Ball::neg() const {
    Ball out(*this);
    mpfr_neg(out.c_, out.c_, MPFR_RNDN);   // exact
    return out;
}

Ball Ball::abs() const {
    // If the ball straddles 0, |x| lies in [0, |c| + r]: represent as the
    // ball with center = radius = (|c| + r)/2. Halving is exact in binary,
    // so no extra slack is needed.
    if (contains_zero()) {
        Ball out(prec());
        mpfr_t hi;
        mpfr_init2(hi, kRadiusPrec);
        mpfr_abs(hi, c_, MPFR_RNDU);
        mpfr_add(hi, hi, r_, MPFR_RNDU);
        mpfr_div_2ui(hi, hi, 1, MPFR_RNDN);
        mpfr_set(out.c_, hi, MPFR_RNDU);
        mpfr_set(out.r_, hi, MPFR_RNDU);
        mpfr_clear(hi);
        return out;
    }
    Ball out(*this);
    mpfr_abs(out.c_, out.c_, MPFR_RNDN);   // exact
    return out;
}

Ball Ball::mul_2si(long e) const {
    Ball out(*this);
    mpfr_mul_2si(out.c_, out.c_, e, MPFR_RNDN);   // exact
    mpfr_mul_2si(out.r_, out.r_, e, MPFR_RNDU);
    return out;
}

void Ball::lower(mpfr_t out) const {
    mpfr_sub(out, c_, r_, MPFR_RNDD);
}

void Ball::upper(mpfr_t out) const {
    mpfr_add(out, c_, r_, MPFR_RNDU);
}

Ball Ball::recip() const {
    if (contains_zero())
        throw budget_error("Ball::recip: interval contains zero");
    // Endpoint division: 1/[lo, hi] with lo, hi same sign.
    mpfr_t lo, hi, ilo, ihi;
    mpfr_init2(lo, prec());
    mpfr_init2(hi, prec());
    mpfr_init2(ilo, prec());
    mpfr_init2(ihi, prec());
    lower(lo);
    upper(hi);
    mpfr_ui_div(ilo, 1, hi, MPFR_RNDD);
    mpfr_ui_div(ihi, 1, lo, MPFR_RNDU);
    Ball out(prec());
    int t1 = mpfr_add(out.c_, ilo, ihi, MPFR_RNDN);
    int t2 = mpfr_div_2ui(out.c_, out.c_, 1, MPFR_RNDN);
    mpfr_t rad;
    mpfr_init2(rad, kRadiusPrec);
    mpfr_sub(rad, ihi, ilo, MPFR_RNDU);
    mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);
    mpfr_set(out.r_, rad, MPFR_RNDU);
    out.bump_radius_ulp(t1 != 0 || t2 != 0);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(ilo);
    mpfr_clear(ihi);
    mpfr_clear(rad);
    return out;
}

Ball Ball::div(const Ball& o) const {
    return mul(o.recip());
}

Ball Ball::sqrt_nonneg() const {
    mpfr_t lo, hi, slo, shi;
    mpfr_init2(lo, prec());
    mpfr_init2(hi, prec());
    mpfr_init2(slo, prec());
    mpfr_init2(shi, prec());
    lower(lo);
    upper(hi);
    if (mpfr_sgn(hi) < 0) {
        mpfr_clears(lo, hi, slo, shi, nullptr);
        throw std::domain_error("Ball::sqrt_nonneg: entirely negative");
    }
    if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
    mpfr_sqrt(slo, lo, MPFR_RNDD);
    mpfr_sqrt(shi, hi, MPFR_RNDU);
    Ball out(prec());
    int t1 = mpfr_add(out.c_, slo, shi, MPFR_RNDN);
    int t2 = mpfr_div_2ui(out.c_, out.c_, 1, MPFR_RNDN);
    mpfr_t rad;
    mpfr_init2(rad, kRadiusPrec);
    mpfr_sub(rad, shi, slo, MPFR_RNDU);
    mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);
    mpfr_set(out.r_, rad, MPFR_RNDU);
    out.bump_radius_ulp(t1 != 0 || t2 != 0);
    mpfr_clears(lo, hi, slo, shi, rad, nullptr);
    return out;
}

Ball Ball::pow(const mpz_class& e) const {
    if (sgn(e) < 0) {
        mpz_class pe = -e;
        return pow(pe).recip();
    }
    if (sgn(e) == 0) return Ball::exact(1L, prec());
    Ball acc = Ball::exact(1L, prec());
    Ball base = *this;
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        acc = acc.sqr();
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc.mul(base);
    }
    return acc;
}

bool Ball::contains_zero() const {
    mpfr_t a;
    mpfr_init2(a, kRadiusPrec);
    mpfr_abs(a, c_, MPFR_RNDD);         // lower bound of |c|
    bool z = mpfr_cmp(a, r_) <= 0;
    mpfr_clear(a);
    return z;
}

bool Ball::contains(const mpq_class& v) const {
    // v in [c - r, c + r], decided against outward-rounded endpoints with
    // exact mpfr/mpq comparison. Outward rounding only widens, so a true
    // member is never rejected.
    mpfr_t lo, hi;
    mpfr_init2(lo, prec());
    mpfr_init2(hi, prec());
    lower(lo);
    upper(hi);
    bool in = mpfr_cmp_q(lo, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi, v.get_mpq_t()) >= 0;
    mpfr_clear(lo);
    mpfr_clear(hi);
    return in;
}

bool Ball::certainly_less(const Ball& o) const {
    mpfr_t a, b;
    mpfr_init2(a, prec());
    mpfr_init2(b, o.prec());
    upper(a);
    o.lower(b);
    bool lt = mpfr_cmp(a, b) < 0;
    mpfr_clear(a);
    mpfr_clear(b);
    return lt;
}

bool Ball::certainly_positive() const {
    mpfr_t lo;
    mpfr_init2(lo, prec());
    lower(lo);
    bool p = mpfr_sgn(lo) > 0;
    mpfr_clear(lo);
    return p;
}

bool Ball::certainly_negative() const {
    mpfr_t hi;
    mpfr_init2(hi, prec());
    upper(hi);
    bool n = mpfr_sgn(hi) < 0;
    mpfr_clear(hi);
    return n;
}

bool Ball::overlaps(const Ball& o) const {
    return !certainly_less(o) && !o.certainly_less(*this);
}

Ball Ball::at_prec(mpfr_prec_t p) const {
    Ball out(p);
    int t = mpfr_set(out.c_, c_, MPFR_RNDN);
    mpfr_set(out.r_, r_, MPFR_RNDU);
    out.bump_radius_ulp(t);
    return out;
}

Ball Ball::hull(const Ball& a, const Ball& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    mpfr_t lo1, hi1, lo2, hi2;
    mpfr_init2(lo1, p);
    mpfr_init2(hi1, p);
    mpfr_init2(lo2, p);
    mpfr_init2(hi2, p);
    a.lower(lo1);
    a.upper(hi1);
    b.lower(lo2);
    b.upper(hi2);
    if (mpfr_cmp(lo2, lo1) < 0) mpfr_swap(lo1, lo2);
    if (mpfr_cmp(hi2, hi1) > 0) mpfr_swap(hi1, hi2);
    Ball out(p);
    int t1 = mpfr_add(out.c_, lo1, hi1, MPFR_RNDN);
    int t2 = mpfr_div_2ui(out.c_, out.c_, 1, MPFR_RNDN);
    mpfr_t rad;
    mpfr_init2(rad, kRadiusPrec);
    mpfr_sub(rad, hi1, lo1, MPFR_RNDU);
    mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);
    mpfr_set(out.r_, rad, MPFR_RNDU);
    out.bump_radius_ulp(t1 != 0 || t2 != 0);
    mpfr_clears(lo1, hi1, lo2, hi2, rad, nullptr);
    return out;
}

Ball Ball::widened(const Ball& err) const {
    Ball out(*this);
    mpfr_t e;
    mpfr_init2(e, kRadiusPrec);
    mpfr_abs(e, err.c_, MPFR_RNDU);
    mpfr_add(e, e, err.r_, MPFR_RNDU);
    mpfr_add(out.r_, out.r_, e, MPFR_RNDU);
    mpfr_clear(e);
    return out;
}

std::string Ball::center_str() const {
    if (mpfr_zero_p(c_)) return "0";
    // Enough decimal digits to round-trip the center.
    size_t digits = static_cast<size_t>(mpfr_get_prec(c_) * 0.3010299957) + 3;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, c_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string out = (neg ? "-0." : "0.") + mant.substr(neg ? 1 : 0);
    out += "e" + std::to_string(e);
    return out;
}

std::string Ball::radius_str() const {
    if (mpfr_zero_p(r_)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, 4, r_, MPFR_RNDU);
    std::string mant(s);
    mpfr_free_str(s);
    return "0." + mant + "e" + std::to_string(e);
}

CBall CBall::div(const CBall& o) const {
    Ball den = o.re.sqr().add(o.im.sqr());
    Ball rden = den.recip();
    CBall num = mul(o.conj());
    return CBall(num.re.mul(rden), num.im.mul(rden));
}

} // namespace tmpow
