#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sifs/fibonacci.hpp"
#include "sifs/plane.hpp"
#include "sifs/quartic.hpp"

using sifs::QuarticScalar;
using sifs::Rational;

namespace {

QuarticScalar random_scalar(std::mt19937_64& rng, int span = 40) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    auto r = [&] { return Rational(num(rng), den(rng)); };
    return {r(), r(), r(), r()};
}

// Independent evaluation in long double, for sign and approximation oracles.
long double eval_ld(const QuarticScalar& x) {
    long double out = 0;
    const long double roots[4] = {1.0L, std::sqrt(3.0L), std::sqrt(5.0L), std::sqrt(15.0L)};
    for (int i = 0; i < 4; ++i)
        out += static_cast<long double>(x[i].numerator().get_d()) / x[i].denominator().get_d() * roots[i];
    return out;
}

}  // namespace

TEST(Rational, CanonicalForm) {
    Rational a(6, -4);
    EXPECT_EQ(a.str(), "-3/2");
    EXPECT_EQ(Rational(0, 7).str(), "0");
    EXPECT_EQ(Rational(0, 7), Rational());
    EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
    EXPECT_THROW(Rational(1, 0), sifs::DomainError);
}

TEST(Rational, PromotesPastInt64AndDemotesBack) {
    Rational big(std::numeric_limits<long long>::max());
    Rational sum = big + big;
    EXPECT_FALSE(sum.is_small());
    Rational back = sum - big;
    EXPECT_TRUE(back.is_small());
    EXPECT_EQ(back, big);
    EXPECT_EQ(sum / big, Rational(2));
}

TEST(Quartic, BasisProduct) {
    EXPECT_EQ(QuarticScalar::sqrt3() * QuarticScalar::sqrt5(), QuarticScalar::sqrt15());
    EXPECT_EQ(QuarticScalar::sqrt15() * QuarticScalar::sqrt15(), QuarticScalar(15));
}

TEST(Quartic, ContractionTimesGoldenSquaredIsOne) {
    QuarticScalar phi = QuarticScalar::hat_ratio();
    QuarticScalar g = QuarticScalar::golden();
    EXPECT_EQ(phi * g * g, QuarticScalar(1));
    EXPECT_EQ(phi.inverse(), g * g);
}

TEST(Quartic, RationalizesHatParameter) {
    QuarticScalar c = QuarticScalar(1) / (QuarticScalar(1) + QuarticScalar::sqrt3());
    // (sqrt3 - 1)/2, checked by multiplying back rather than trusting the inverse routine.
    QuarticScalar expected(Rational(-1, 2), Rational(1, 2), 0, 0);
    EXPECT_EQ(c, expected);
    EXPECT_EQ(expected * (QuarticScalar(1) + QuarticScalar::sqrt3()), QuarticScalar(1));
    QuarticScalar mix = (QuarticScalar(1) - c) * QuarticScalar::sqrt3() + QuarticScalar(3) * c;
    // (1-c)sqrt3 = (3 sqrt3 - 3)/2 and 3c = (3 sqrt3 - 3)/2.
    EXPECT_EQ(mix, QuarticScalar(-3, 3, 0, 0));
}

TEST(Quartic, DivisionByZeroThrows) {
    EXPECT_THROW(QuarticScalar(1) / QuarticScalar(), sifs::DomainError);
    EXPECT_THROW(QuarticScalar().inverse(), sifs::DomainError);
}

TEST(Quartic, SignExamples) {
    EXPECT_EQ(sign(QuarticScalar()), 0);
    EXPECT_EQ(sign(QuarticScalar::hat_ratio() - QuarticScalar(1)), -1);
    EXPECT_EQ(sign(QuarticScalar::sqrt15() - QuarticScalar::sqrt3() * QuarticScalar::sqrt5()), 0);
}

TEST(Quartic, SignOfNearCancellationNeedsRefinement) {
    // Convergents of sqrt3 and sqrt5 give differences far below double resolution.
    sifs::BigInt p = 1, q = 1;
    for (int i = 0; i < 60; ++i) {
        sifs::BigInt np = p + 3 * q;
        q = p + q;
        p = np;
    }
    QuarticScalar x(Rational(p, q), -1, 0, 0);
    EXPECT_EQ(x.enclose().certain_sign(), 0);
    int s = sign(x);
    EXPECT_NE(s, 0);
    // Pell-type convergents alternate around sqrt3; p^2 - 3q^2 has the sign of p/q - sqrt3.
    sifs::BigInt pell = p * p - 3 * q * q;
    EXPECT_EQ(s, sgn(pell));
}

TEST(Quartic, FieldAxiomsOnRandomSamples) {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        QuarticScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), QuarticScalar(1));
        }
        EXPECT_EQ(sign(a) * sign(b), sign(a * b));
        long double v = eval_ld(a);
        if (std::fabs(v) > 1e-12L) {
            EXPECT_EQ(sign(a), v > 0 ? 1 : -1);
        }
    }
}

TEST(Quartic, FloatApprox) {
    long double phi = (3.0L - std::sqrt(5.0L)) / 2.0L;
    EXPECT_NEAR(sifs::float_approx(QuarticScalar::hat_ratio(), 53).get_d(), static_cast<double>(phi), 0x1p-52);
    EXPECT_EQ(sifs::float_approx(QuarticScalar(), 53).get_d(), 0.0);
    EXPECT_NEAR(sifs::to_double(QuarticScalar::sqrt3()), 1.7320508075688772, 0x1p-52);
    EXPECT_THROW(sifs::float_approx(QuarticScalar(1), 40), sifs::DomainError);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        QuarticScalar x = random_scalar(rng);
        double f = sifs::float_approx(x, 200).get_d();
        if (sign(x) != 0) {
            EXPECT_EQ(sign(x), f > 0 ? 1 : -1);
        }
    }
}

TEST(Quartic, SerializationIsStable) {
    QuarticScalar x(Rational(-1, 2), Rational(1, 2), 0, Rational(7, 3));
    EXPECT_EQ(x.str(), "-1/2 + 1/2*r3 + 0*r5 + 7/3*r15");
}

TEST(Fibonacci, Values) {
    EXPECT_EQ(sifs::fib(0), 0);
    EXPECT_EQ(sifs::fib(1), 1);
    EXPECT_EQ(sifs::fib(2), 1);
    sifs::BigInt a = 0, b = 1;
    for (int i = 0; i < 18; ++i) {
        sifs::BigInt t = a + b;
        a = b;
        b = t;
    }
    EXPECT_EQ(a, 2584);
    EXPECT_EQ(sifs::fib(18), a);
    for (int m = 0; m <= 200; ++m) EXPECT_EQ(sifs::fib(m + 2), sifs::fib(m + 1) + sifs::fib(m));
    EXPECT_THROW(sifs::fib(-1), sifs::DomainError);
}

TEST(Plane, SextantRotationsAreSixthRootsOfUnity) {
    for (int k = 0; k < 6; ++k) {
        sifs::PlanePoint r = sifs::sextant_rotation(k);
        EXPECT_EQ(r.norm(), QuarticScalar(1));
        EXPECT_EQ(r * sifs::sextant_rotation(1), sifs::sextant_rotation(k + 1));
    }
    EXPECT_EQ(sifs::sextant_rotation(-1), sifs::sextant_rotation(5));
}
