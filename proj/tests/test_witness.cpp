#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmpow/thue_morse.hpp"
#include "tmpow/witness.hpp"

using namespace tmpow;

TEST_CASE("two_adic_valuation") {
    CHECK(two_adic_valuation(mpz_class(3)) == 0);
    CHECK(two_adic_valuation(mpz_class(2)) == 1);
    CHECK(two_adic_valuation(mpz_class(12)) == 2);
    CHECK_THROWS_AS(two_adic_valuation(mpz_class(0)), std::invalid_argument);
}

TEST_CASE("solve_congruence canonical solutions") {
    auto s2v = solve_congruence(2);
    CHECK(s2v.m == 1);
    CHECK(s2v.n == 1);
    CHECK(s2v.x == 1);
    CHECK(s2v.case_tag == WitnessCase::EvenK);

    auto s3 = solve_congruence(3);     // 3^2 = 9 = 1 + 2^3 mod 2^5: s=3, a=0
    CHECK(s3.m == 2);
    CHECK(s3.n == 2);
    CHECK(s3.x == 23);
    CHECK(s3.case_tag == WitnessCase::OddSOdd);
    CHECK(s3.s == 3);
    CHECK(s3.a == 0);

    auto s5 = solve_congruence(5);     // 3^4 = 81 = 1 + 2^4 mod 2^6: s=4, a=0
    CHECK(s5.m == 3);
    CHECK(s5.n == 2);
    CHECK(s5.x == 95);
    CHECK(s5.case_tag == WitnessCase::OddSEven);

    CHECK_THROWS_AS(solve_congruence(1), std::invalid_argument);
}

TEST_CASE("verify_congruence is an independent modular check") {
    CHECK(verify_congruence(2, 1, 1, mpz_class(1)));
    CHECK(verify_congruence(3, 2, 2, mpz_class(23)));
    CHECK_FALSE(verify_congruence(3, 2, 2, mpz_class(24)));
    // direct numbers from the derivation: 23 = 7 mod 16, 9*23 = 207 = 15 mod 32
    CHECK(mpz_class(23) % 16 == 7);
    CHECK(mpz_class(9 * 23) % 32 == 15);
}

TEST_CASE("verify_congruence(solve_congruence(k)) for k in 2..256") {
    for (unsigned k = 2; k <= 256; ++k) {
        auto s = solve_congruence(k);
        CAPTURE(k);
        REQUIRE(verify_congruence(k, s.m, s.n, s.x));
    }
}

TEST_CASE("shift_witness canonical values") {
    auto w2 = shift_witness(2);
    CHECK(w2.y == 1);
    CHECK(w2.z == 1);
    CHECK(w2.nu == 1);

    auto w3 = shift_witness(3);
    CHECK(w3.y == 349);
    CHECK(w3.z == 1047);
    CHECK(mpz_class(3 * 349) % 512 == 23);

    auto w4 = shift_witness(4);
    CHECK(w4.nu == 2);
    CHECK(w4.y == 1);
    CHECK(w4.z == 1);
}

TEST_CASE("witness invariants and tm identities for k in 2..64") {
    for (unsigned k = 2; k <= 64; ++k) {
        CAPTURE(k);
        auto w = shift_witness(k);
        REQUIRE(verify_congruence(w.k, w.m, w.n, w.x));
        REQUIRE(w.y >= 1);
        REQUIRE(w.y <= w.modulus());
        mpz_class odd = mpz_class(k) >> w.nu;
        REQUIRE((odd * w.y - w.x) % w.modulus() == 0);
        REQUIRE(w.z == odd * w.y);
        REQUIRE(check_tm_identities(w));
        if (k % 2 == 0) {
            REQUIRE(w.m == 1);
            REQUIRE(w.n == 1);
            REQUIRE(w.x == 1);
        }
    }
}

TEST_CASE("y is the least positive solution (exhaustive below y, k <= 16)") {
    for (unsigned k = 2; k <= 16; ++k) {
        auto w = shift_witness(k);
        mpz_class odd = mpz_class(k) >> w.nu;
        mpz_class mod = w.modulus();
        for (mpz_class yp = 1; yp < w.y; ++yp)
            REQUIRE((odd * yp - w.x) % mod != 0);
    }
}

TEST_CASE("min_valid_N values and minimality") {
    auto w2 = shift_witness(2);
    CHECK(min_valid_N(w2) == 15);
    // threshold trace: (i) fails at 13, holds at 14; (ii) fails at 14
    CHECK_FALSE(threshold_ineq_binomial(w2, 13));
    CHECK(threshold_ineq_binomial(w2, 14));
    CHECK_FALSE(threshold_ineq_lower_powers(w2, 14));
    CHECK(threshold_ineq_lower_powers(w2, 15));

    for (unsigned k : {2u, 3u, 4u, 5u, 8u, 12u}) {
        auto w = shift_witness(k);
        unsigned N = min_valid_N(w);
        CAPTURE(k);
        CAPTURE(N);
        REQUIRE(threshold_ineq_binomial(w, N));
        REQUIRE(threshold_ineq_lower_powers(w, N));
        REQUIRE((!threshold_ineq_binomial(w, N - 1) || !threshold_ineq_lower_powers(w, N - 1)));
    }
}

TEST_CASE("check_tm_identities rejects a corrupted witness") {
    auto w = shift_witness(3);
    w.x += 1;    // suffix form broken
    CHECK_FALSE(check_tm_identities(w));
}

TEST_CASE("witness cache returns consistent objects") {
    auto a = shift_witness(7);
    auto b = shift_witness(7);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    auto c = shift_witness_uncached(7);
    CHECK(a.x == c.x);
    CHECK(a.y == c.y);
}
