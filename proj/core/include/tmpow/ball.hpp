#pragma once

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace tmpow {

// A real number enclosure [center - radius, center + radius].
//
// The center is an mpfr float at the ball's working precision; the radius a
// low-precision mpfr always rounded upward. Every operation produces a ball
// that contains the exact result of applying the operation to any reals in
// the operands. Center rounding errors enter the radius only when mpfr
// reports the operation inexact, so chains of representable dyadic
// operations keep radius 0 and exactness is observable via is_exact().
class Ball {
public:
    static constexpr mpfr_prec_t kRadiusPrec = 64;

    explicit Ball(mpfr_prec_t prec = 128);
    Ball(const Ball& o);
    Ball(Ball&& o) noexcept;
    Ball& operator=(const Ball& o);
    Ball& operator=(Ball&& o) noexcept;
    ~Ball();

    static Ball exact(const mpz_class& v, mpfr_prec_t prec);
    static Ball exact(long v, mpfr_prec_t prec);
    static Ball from_mpq(const mpq_class& v, mpfr_prec_t prec);  // radius covers rounding
    static Ball zero(mpfr_prec_t prec) { return exact(0L, prec); }
    // Radius-0 ball at the given dyadic point (rounded to prec if narrower).
    static Ball point(const mpfr_t v, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(c_); }
    const mpfr_t& center() const { return c_; }
    const mpfr_t& radius() const { return r_; }
    bool is_exact() const { return mpfr_zero_p(r_); }

    Ball add(const Ball& o) const;
    Ball sub(const Ball& o) const;
    Ball mul(const Ball& o) const;
    Ball div(const Ball& o) const;          // throws if o may contain 0
    Ball neg() const;
    Ball abs() const;
    Ball sqr() const { return mul(*this); }
    Ball sqrt_nonneg() const;               // enclosure of sqrt, lower endpoint clamped at 0
    Ball recip() const;
    Ball mul_2si(long e) const;             // exact scaling by 2^e
    Ball pow(const mpz_class& e) const;     // integer exponent, binary powering

    // Outward-rounded endpoints at this precision.
    void lower(mpfr_t out) const;           // RNDD(c - r)
    void upper(mpfr_t out) const;           // RNDU(c + r)

    bool contains_zero() const;
    bool contains(const mpq_class& v) const;
    // Certified strict comparisons: true only when the balls are disjoint
    // in the stated order. False means "not provable at this radius".
    bool certainly_less(const Ball& o) const;
    bool certainly_greater(const Ball& o) const { return o.certainly_less(*this); }
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool overlaps(const Ball& o) const;

    // Signed distance bounds as doubles (for diagnostics only).
    double center_d() const { return mpfr_get_d(c_, MPFR_RNDN); }
    double radius_d() const { return mpfr_get_d(r_, MPFR_RNDU); }

    // Decimal serialization: round-trippable center at full ball precision,
    // upper-bounded radius. Deterministic for a given ball.
    std::string center_str() const;
    std::string radius_str() const;

    // Change working precision (center rounded, rounding added to radius).
    Ball at_prec(mpfr_prec_t prec) const;

    // Hull of two balls (smallest ball containing both).
    static Ball hull(const Ball& a, const Ball& b);

    // This ball with the upper bound of |err| added to the radius.
    Ball widened(const Ball& err) const;

private:
    void bump_radius_ulp(int ternary);      // add one ulp of c_ to r_ if ternary != 0
    void add_radius(const mpfr_t e);
    mpfr_t c_;
    mpfr_t r_;
};

// Complex ball: rectangular enclosure re + i*im.
class CBall {
public:
    explicit CBall(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}

    static CBall exact(const mpz_class& r, const mpz_class& i, mpfr_prec_t prec) {
        return CBall(Ball::exact(r, prec), Ball::exact(i, prec));
    }

    CBall add(const CBall& o) const { return CBall(re.add(o.re), im.add(o.im)); }
    CBall sub(const CBall& o) const { return CBall(re.sub(o.re), im.sub(o.im)); }
    CBall mul(const CBall& o) const {
        return CBall(re.mul(o.re).sub(im.mul(o.im)), re.mul(o.im).add(im.mul(o.re)));
    }
    CBall div(const CBall& o) const;
    CBall neg() const { return CBall(re.neg(), im.neg()); }
    CBall conj() const { return CBall(re, im.neg()); }

    // Enclosure of |z|.
    Ball modulus() const { return re.sqr().add(im.sqr()).sqrt_nonneg(); }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    Ball re, im;
};

} // namespace tmpow
