#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "a2spider/scalar.hpp"

using namespace a2;

namespace {

Scalar vp(long e) { return Scalar::v_pow(e); }

// Independent oracle: quantum factorial as an explicit product, divided the
// long way. Used to freeze qbinom expectations without touching qbinom.
Scalar qfact(long n) {
    Scalar r(1);
    for (long i = 1; i <= n; ++i) r = r * qint(i);
    return r;
}

}  // namespace

TEST_CASE("quantum integers") {
    CHECK(qint(0).is_zero());
    CHECK(qint(1).is_one());
    CHECK(qint(2) == vp(3) + vp(-3));
    CHECK(qint(3) == vp(6) + Scalar(1) + vp(-6));
    CHECK(qint(-4) == -qint(4));
}

TEST_CASE("field ops and normal form") {
    CHECK((qint(2) + (-qint(2))).is_zero());
    // [2]^2 = [3] + [1], expanded by hand on both sides.
    CHECK(qint(2) * qint(2) == qint(3) + Scalar(1));
    // [4]/[2] = v^6 + v^-6 by polynomial division.
    CHECK(qint(4) / qint(2) == vp(6) + vp(-6));
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
    // Normal form: denominator of 1/[2] is the plain monic poly v^6 + 1.
    Scalar inv2 = Scalar(1) / qint(2);
    CHECK(inv2.den() == (vp(6) + Scalar(1)).num());
    CHECK(inv2 * qint(2) == Scalar(1));
}

TEST_CASE("qbinom against factorial oracle") {
    CHECK(qbinom(5, 0) == Scalar(1));
    CHECK(qbinom(2, 1) == qint(2));
    // [4 choose 2] = [4]!/([2]![2]!) via the factorial oracle; also freeze
    // the 5-term expansion v^12 + v^6 + 2 + v^-6 + v^-12.
    Scalar expect = qfact(4) / (qfact(2) * qfact(2));
    CHECK(qbinom(4, 2) == expect);
    CHECK(qbinom(4, 2) == vp(12) + vp(6) + Scalar(2) + vp(-6) + vp(-12));
    CHECK_THROWS_AS(qbinom(3, 4), std::domain_error);

    for (long n = 1; n <= 8; ++n) {
        for (long k = 1; k <= n; ++k) {
            Scalar b = qbinom(n, k);
            CHECK(b.den().is_one());  // always a Laurent polynomial
            // Ordinary binomial at q = 1.
            Rational expect_q1 = 1;
            for (long i = 1; i <= k; ++i) expect_q1 = expect_q1 * (n - k + i) / i;
            CHECK(b.eval_at_one() == expect_q1);
        }
    }
}

TEST_CASE("qint product identities") {
    // [2][k] = [k+1] + [k-1]
    for (long k = 1; k <= 20; ++k)
        CHECK(qint(2) * qint(k) == qint(k + 1) + qint(k - 1));
    // [a][b] = sum_i [a+b-(2i-1)]
    for (long a = 1; a <= 10; ++a) {
        for (long b = 1; b <= 10; ++b) {
            Scalar rhs(0);
            for (long i = 1; i <= a; ++i) rhs += qint(a + b - (2 * i - 1));
            CHECK(qint(a) * qint(b) == rhs);
        }
    }
}

TEST_CASE("star involution") {
    CHECK(vp(1).star() == vp(-1));
    CHECK(qint(3).star() == qint(3));
    CHECK((vp(3) + Scalar(2)).star() == vp(-3) + Scalar(2));
    // Field automorphism on a grab bag of scalars.
    Scalar xs[] = {qint(2), qint(5) / qint(3), vp(7) - Scalar(4),
                   Scalar(1) / (qint(2) * qint(2)), vp(-2) + qint(4)};
    for (auto& a : xs) {
        CHECK(a.star().star() == a);
        for (auto& b : xs) {
            CHECK((a * b).star() == a.star() * b.star());
            CHECK((a + b).star() == a.star() + b.star());
        }
    }
}

TEST_CASE("evaluation at q = 1") {
    CHECK(qint(3).eval_at_one() == 3);
    for (long n = 0; n <= 12; ++n) CHECK(qint(n).eval_at_one() == n);
    CHECK((qint(4) / qint(2)).eval_at_one() == 2);
    CHECK_THROWS_AS((Scalar(1) / (vp(3) - vp(-3))).eval_at_one(), PoleAtOne);
}

TEST_CASE("string round trip") {
    Scalar xs[] = {Scalar(0),
                   Scalar(1),
                   qint(2),
                   qint(3),
                   -qint(5),
                   qint(2) / qint(3),
                   Scalar(1) / qint(2),
                   vp(-7) * Scalar(Rational(3, 2)) + Scalar(5)};
    for (auto& a : xs) {
        CAPTURE(a.str());
        CHECK(parse_scalar(a.str()) == a);
    }
    CHECK(qint(3).str() == "(v^6 + 1 + v^-6)");
    CHECK(qint(2).str() == "(v^3 + v^-3)");
    CHECK(parse_scalar("(v^3+v^-3)/(v^6+1)") == qint(2) / (vp(6) + Scalar(1)));
    CHECK(parse_scalar("1/(v^6+1+v^-6)") == Scalar(1) / qint(3));
    CHECK(parse_scalar("(v^3+v^-3)(v^9+v^3+v^-3+v^-9)") == qint(2) * qint(4));
    CHECK_THROWS(parse_scalar("v^"));
    CHECK_THROWS(parse_scalar("(1"));
}
