#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmpow/number_field.hpp"
#include "tmpow/util.hpp"

using namespace tmpow;

static NumberField make(std::initializer_list<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    return NumberField(std::move(v));
}

static void check_between(const Ball& b, const mpq_class& lo, const mpq_class& hi) {
    CHECK(Ball::from_mpq(lo, b.prec()).certainly_less(b));
    CHECK(b.certainly_less(Ball::from_mpq(hi, b.prec())));
}

TEST_CASE("golden ratio field") {
    NumberField f = make({-1, -1, 1});
    CHECK(f.classification() == FieldClass::Pisot);
    CHECK(f.degree() == 2);
    CHECK(f.threshold_check());
    check_between(f.beta(128), mpq_class(1618033988u, 1000000000u),
                  mpq_class(1618033989u, 1000000000u));
    size_t other = f.beta_index() == 0 ? 1 : 0;
    CBall conj = f.root(other, 96);
    CHECK(conj.im.contains(mpq_class(0)));
    check_between(conj.re, mpq_class(-6180339888, 10000000000u),
                  mpq_class(-6180339887, 10000000000u));
    CHECK(conj.modulus().certainly_less(Ball::exact(1L, 96)));
}

TEST_CASE("plastic number field") {
    NumberField f = make({-1, -1, 0, 1});
    CHECK(f.classification() == FieldClass::Pisot);
    CHECK(f.threshold_check());
    check_between(f.beta(128), mpq_class(1324717957u, 1000000000u),
                  mpq_class(1324717958u, 1000000000u));
    // both conjugates inside the unit circle
    for (size_t i = 0; i < f.num_roots(); ++i) {
        if (i == f.beta_index()) continue;
        CHECK(f.root(i, 96).modulus().certainly_less(Ball::exact(1L, 96)));
    }
}

TEST_CASE("Lehmer polynomial is Salem and below the threshold") {
    NumberField f = make({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
    CHECK(f.classification() == FieldClass::Salem);
    CHECK_FALSE(f.threshold_check());
    check_between(f.beta(128), mpq_class(117628081u, 100000000u),
                  mpq_class(117628082u, 100000000u));
}

TEST_CASE("integer field x - b") {
    NumberField f = make({-2, 1});
    CHECK(f.classification() == FieldClass::RationalInteger);
    CHECK(f.degree() == 1);
    CHECK(f.threshold_check());
    CHECK(f.beta(64).contains(mpq_class(2)));
    CHECK(f.beta(64).is_exact());
    CHECK_THROWS_AS(make({-1, 1}), field_error);    // beta = 1 is not > 1
}

TEST_CASE("threshold equality case: x^4 - x^2 - 1 reports false") {
    NumberField f = make({-1, 0, -1, 0, 1});
    CHECK_FALSE(f.threshold_check());
    CHECK(f.classification() == FieldClass::Other);  // conjugates off the unit circle
}

TEST_CASE("reducible and rootless inputs are rejected with reasons") {
    CHECK_THROWS_WITH_AS(make({-1, 0, 1}), doctest::Contains("reducible"), field_error);
    CHECK_THROWS_WITH_AS(make({2, -3, 1}), doctest::Contains("reducible"), field_error);
    CHECK_THROWS_WITH_AS(make({6, -5, 1}), doctest::Contains("reducible"), field_error);
    CHECK_THROWS_WITH_AS(make({1, 0, 1}), doctest::Contains("no real root"), field_error);
    CHECK_THROWS_WITH_AS(make({1, 2, 1}), doctest::Contains("reducible"), field_error);  // (x+1)^2
    CHECK_THROWS_AS(make({1, 2}), field_error);      // non-monic
}

TEST_CASE("a reciprocal Pisot quadratic classifies pisot") {
    NumberField f = make({1, -3, 1});    // x^2 - 3x + 1, roots 2.618, 0.382
    CHECK(f.classification() == FieldClass::Pisot);
    CHECK(f.threshold_check());
}

TEST_CASE("the smallest quartic Salem polynomial") {
    NumberField f = make({1, -1, -1, -1, 1});        // beta ~ 1.7220838
    CHECK(f.classification() == FieldClass::Salem);
    CHECK(f.threshold_check());                      // 1.722 > sqrt(phi)
    check_between(f.beta(128), mpq_class(17220838u, 10000000u),
                  mpq_class(17220839u, 10000000u));
}

TEST_CASE("non-Pisot non-Salem classifies other") {
    // x^2 - x - 3: conjugate ~ -1.30 has modulus > 1
    NumberField f = make({-3, -1, 1});
    CHECK(f.classification() == FieldClass::Other);
}

TEST_CASE("palindrome with circle roots but an extra real pair is other") {
    // trace polynomial z^3 - 5z + 1 has roots ~2.13, ~0.20, ~-2.33: one
    // circle pair plus two real pairs, so reciprocal but not Salem
    NumberField f = make({1, 0, -2, 1, -2, 0, 1});
    CHECK(f.classification() == FieldClass::Other);
    check_between(f.beta(96), mpq_class(1428, 1000), mpq_class(1429, 1000));
}

TEST_CASE("product of certified roots matches the constant term") {
    NumberField f = make({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
    CBall prod(Ball::exact(1L, 128), Ball::exact(0L, 128));
    for (size_t i = 0; i < f.num_roots(); ++i) prod = prod.mul(f.root(i, 128));
    // degree 10: product of roots = +constant term = 1
    CHECK(prod.re.contains(mpq_class(1)));
    CHECK(prod.im.contains(mpq_class(0)));
}

TEST_CASE("field element ring arithmetic in the golden field") {
    NumberField f = make({-1, -1, 1});
    FieldElement b = FieldElement::beta(f);
    FieldElement one = FieldElement::one(f);
    FieldElement b2 = b * b;
    CHECK(b2.coords()[0] == 1);
    CHECK(b2.coords()[1] == 1);                    // beta^2 = beta + 1
    CHECK((b - one) * b == one);                   // (beta-1) beta = 1
    FieldElement a(f, {mpz_class(2), mpz_class(-3)});
    CHECK((a + FieldElement::zero(f)) == a);
    CHECK((a - a).is_zero());
}

TEST_CASE("norms: exact resultant route") {
    NumberField f = make({-1, -1, 1});
    FieldElement b = FieldElement::beta(f);
    CHECK(b.norm() == -1);
    CHECK(FieldElement::one(f).norm() == 1);
    CHECK((b - FieldElement::one(f)).norm() == -1);
    CHECK(FieldElement::zero(f).norm() == 0);
    // d = 1: norm is the element itself
    NumberField g = make({-2, 1});
    FieldElement v = FieldElement::from_int(g, mpz_class(-7));
    CHECK(v.norm() == -7);
}

TEST_CASE("norm multiplicativity and integrality on random elements") {
    NumberField f = make({-1, -1, 0, 1});          // plastic, degree 3
    SplitMix64 rng(4);
    for (int it = 0; it < 60; ++it) {
        auto rnd = [&] {
            std::vector<mpz_class> c;
            for (int i = 0; i < 3; ++i)
                c.emplace_back(static_cast<long>(rng.next() % 2001) - 1000);
            return FieldElement(f, std::move(c));
        };
        FieldElement a = rnd(), b = rnd();
        mpz_class na = a.norm(), nb = b.norm(), nab = (a * b).norm();
        CHECK(nab == na * nb);
        if (!a.is_zero()) CHECK(abs(na) >= 1);
    }
}

TEST_CASE("certified embedding product agrees with the exact norm") {
    NumberField f = make({-1, -1, 0, 1});
    SplitMix64 rng(5);
    for (int it = 0; it < 10; ++it) {
        std::vector<mpz_class> c;
        for (int i = 0; i < 3; ++i)
            c.emplace_back(static_cast<long>(rng.next() % 2001) - 1000);
        FieldElement a(f, std::move(c));
        CBall prod(Ball::exact(1L, 96), Ball::exact(0L, 96));
        for (size_t i = 0; i < f.num_roots(); ++i)
            prod = prod.mul(a.embed(i, 96));
        CHECK(prod.re.contains(mpq_class(a.norm())));
        CHECK(prod.im.contains(mpq_class(0)));
    }
}

TEST_CASE("embedding examples") {
    NumberField f = make({-1, -1, 1});
    FieldElement b = FieldElement::beta(f);
    Ball e = b.embed_beta(64);
    check_between(e, mpq_class(1618033, 1000000), mpq_class(1618034, 1000000));
    CHECK(FieldElement::one(f).embed_beta(64).contains(mpq_class(1)));
    // coords (1,1) at the conjugate root: 1 - 0.618... = 0.3819...
    FieldElement s(f, {mpz_class(1), mpz_class(1)});
    size_t other = f.beta_index() == 0 ? 1 : 0;
    CBall v = s.embed(other, 96);
    check_between(v.re, mpq_class(381966, 1000000), mpq_class(381967, 1000000));
}

TEST_CASE("threshold decision is precision independent") {
    NumberField f = make({-1, -1, 0, 1});
    bool first = f.threshold_check();
    for (int i = 0; i < 3; ++i) CHECK(f.threshold_check() == first);
}

TEST_CASE("field mismatch between elements is rejected") {
    NumberField f = make({-1, -1, 1});
    NumberField g = make({-1, -1, 0, 1});
    FieldElement a = FieldElement::beta(f);
    FieldElement b = FieldElement::beta(g);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}
