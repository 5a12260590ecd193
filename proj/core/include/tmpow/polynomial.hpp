#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tmpow {

// Dense integer-coefficient polynomial, constant term first.
// The zero polynomial has an empty coefficient vector and degree -1.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static ZPoly x_minus(const mpz_class& b) { return ZPoly({-b, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const mpz_class& operator[](size_t i) const { return c_[i]; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& lc() const { return c_.back(); }

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    bool operator==(const ZPoly& o) const { return c_ == o.c_; }

    ZPoly derivative() const;
    ZPoly reversed() const;          // x^deg * p(1/x), trimmed
    bool is_palindrome() const;      // p == reversed (self-reciprocal)

    mpz_class eval(const mpz_class& v) const;
    mpq_class eval(const mpq_class& v) const;
    // Sign of p(v) for rational v, without building the full value when v is integral.
    int sign_at(const mpq_class& v) const;

    mpz_class content() const;
    ZPoly primitive_part() const;

    // Exact division; nullopt if o does not divide *this over Z[x].
    std::optional<ZPoly> divide_exact(const ZPoly& o) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

// Polynomial gcd over Q, returned as a primitive integer polynomial with
// positive leading coefficient. gcd(0, 0) = 0.
ZPoly poly_gcd(const ZPoly& a, const ZPoly& b);

// Resultant Res(f, g), computed exactly as the determinant of the Sylvester
// matrix by Bareiss fraction-free elimination. For monic f this is the
// product of g over the roots of f.
mpz_class resultant(const ZPoly& f, const ZPoly& g);

// Number of distinct real roots of the squarefree part of p in the open
// interval (lo, hi), by Sturm's theorem. Endpoints must not be roots unless
// half-open counting is acceptable; counters below handle the full line.
class SturmChain {
public:
    explicit SturmChain(const ZPoly& p);
    int variations_at(const mpq_class& v) const;
    int variations_at_pos_inf() const;
    int variations_at_neg_inf() const;
    int count_in(const mpq_class& lo, const mpq_class& hi) const;   // open interval (lo, hi)
    int count_real() const;
    int count_greater(const mpq_class& lo) const;                   // (lo, +inf)
    int count_less(const mpq_class& hi) const;                      // (-inf, hi)

private:
    std::vector<ZPoly> chain_;
};

// For a palindromic p of even degree 2e, the unique integer T of degree e
// with p(x) = x^e T(x + 1/x). Roots of p on the unit circle correspond to
// roots of T in (-2, 2); real root pairs (beta, 1/beta) off the circle to
// real roots of T outside [-2, 2].
ZPoly trace_polynomial(const ZPoly& p);

// Cauchy root bound: all complex roots have modulus < 1 + max |a_i| / |lc|,
// returned as an exact integer bound.
mpz_class cauchy_root_bound(const ZPoly& p);

class Ball;
class CBall;
// Certified Horner evaluation.
Ball eval_ball(const ZPoly& p, const Ball& x);
CBall eval_cball(const ZPoly& p, const CBall& z);

} // namespace tmpow
