#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmpow/ball.hpp"
#include "tmpow/util.hpp"

using namespace tmpow;

// Property harness: random rationals, ball ops must enclose the exact value.
static mpq_class rand_q(SplitMix64& rng) {
    long num = static_cast<long>(rng.next() % 2000001) - 1000000;
    long den = 1 + static_cast<long>(rng.next() % 997);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

TEST_CASE("dyadic chains stay exact") {
    Ball a = Ball::exact(mpz_class(3), 128);
    Ball b = Ball::exact(mpz_class(-7), 128);
    Ball c = a.mul(b).add(a).mul_2si(-4).sub(b);
    CHECK(c.is_exact());
    CHECK(c.contains(mpq_class(((3 * -7) + 3), 16) + 7));
    Ball half = Ball::exact(1L, 128).mul_2si(-1);
    CHECK(half.is_exact());
    CHECK(half.contains(mpq_class(1, 2)));
    // 1/2^k via recip stays exact
    Ball q = Ball::exact(mpz_class(1024), 128).recip();
    CHECK(q.is_exact());
    CHECK(q.contains(mpq_class(1, 1024)));
}

TEST_CASE("arithmetic soundness on random rationals") {
    SplitMix64 rng(99);
    for (int i = 0; i < 400; ++i) {
        mpq_class x = rand_q(rng), y = rand_q(rng);
        Ball bx = Ball::from_mpq(x, 96), by = Ball::from_mpq(y, 96);
        CHECK(bx.add(by).contains(x + y));
        CHECK(bx.sub(by).contains(x - y));
        CHECK(bx.mul(by).contains(x * y));
        if (sgn(y) != 0 && !by.contains_zero())
            CHECK(bx.div(by).contains(x / y));
        CHECK(bx.neg().contains(-x));
        CHECK(bx.abs().contains(abs(x)));
    }
}

TEST_CASE("integer powers") {
    SplitMix64 rng(7);
    for (int i = 0; i < 50; ++i) {
        mpq_class x = rand_q(rng);
        Ball b = Ball::from_mpq(x, 160);
        long e = 1 + static_cast<long>(rng.next() % 9);
        mpq_class truth = 1;
        for (long t = 0; t < e; ++t) truth *= x;
        CHECK(b.pow(mpz_class(e)).contains(truth));
        if (sgn(x) != 0 && !b.contains_zero())
            CHECK(b.pow(mpz_class(-e)).contains(1 / truth));
    }
    CHECK(Ball::exact(5L, 64).pow(mpz_class(0)).contains(mpq_class(1)));
}

TEST_CASE("huge exponents survive (widened exponent range)") {
    Ball two = Ball::exact(2L, 64);
    Ball big = two.pow(mpz_class(1) << 33);      // 2^(2^33)
    CHECK(big.certainly_positive());
    Ball tiny = big.recip();
    CHECK(tiny.certainly_positive());
    CHECK(tiny.certainly_less(Ball::exact(1L, 64)));
}

TEST_CASE("certified comparisons need separation") {
    Ball a = Ball::from_mpq(mpq_class(1, 3), 64);
    Ball b = Ball::from_mpq(mpq_class(2, 3), 64);
    CHECK(a.certainly_less(b));
    CHECK_FALSE(b.certainly_less(a));
    CHECK(a.overlaps(a));
    CHECK_FALSE(a.overlaps(b));
    Ball wide = Ball::hull(a, b);
    CHECK(wide.overlaps(a));
    CHECK(wide.overlaps(b));
    CHECK(wide.contains(mpq_class(1, 2)));
}

TEST_CASE("sqrt enclosure") {
    Ball two = Ball::exact(2L, 128);
    Ball r = two.sqrt_nonneg();
    mpq_class lo(141421356, 100000000), hi(141421357, 100000000);
    CHECK(r.certainly_positive());
    CHECK(r.sqr().contains(mpq_class(2)));
    CHECK(Ball::from_mpq(lo, 128).certainly_less(r));
    CHECK(r.certainly_less(Ball::from_mpq(hi, 128)));
    CHECK_THROWS_AS(Ball::exact(-1L, 64).sqrt_nonneg(), std::domain_error);
}

TEST_CASE("division by a zero-straddling ball is rejected") {
    Ball z = Ball::from_mpq(mpq_class(1, 1000000), 8).sub(Ball::from_mpq(mpq_class(1, 1000001), 8));
    Ball one = Ball::exact(1L, 64);
    if (z.contains_zero())
        CHECK_THROWS_AS(one.div(z), budget_error);
    CHECK_THROWS_AS(one.div(Ball::exact(0L, 64)), budget_error);
}

TEST_CASE("complex balls") {
    CBall i(Ball::exact(0L, 96), Ball::exact(1L, 96));
    CBall z = i.mul(i);
    CHECK(z.re.contains(mpq_class(-1)));
    CHECK(z.im.contains(mpq_class(0)));
    CBall w(Ball::from_mpq(mpq_class(3), 96), Ball::from_mpq(mpq_class(4), 96));
    CHECK(w.modulus().contains(mpq_class(5)));
    CBall q = w.div(w);
    CHECK(q.re.contains(mpq_class(1)));
    CHECK(q.im.contains(mpq_class(0)));
}

TEST_CASE("serialization round trips through decimal") {
    Ball v = Ball::from_mpq(mpq_class(-355, 113), 128);
    std::string c = v.center_str();
    CHECK(c.substr(0, 5) == "-0.31");
    CHECK(Ball::exact(0L, 64).center_str() == "0");
    CHECK(Ball::exact(0L, 64).radius_str() == "0");
    // deterministic: same ball, same string
    CHECK(v.center_str() == v.center_str());
}
