#include "prfair/rational.hpp"

#include <gtest/gtest.h>

using prfair::Rational;

TEST(Rational, NormalizesSignAndCommonFactors) {
    const Rational r{6, -4};
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(Rational(0, 7), Rational{0});
}

TEST(Rational, RepeatedQuotaRemovalStaysExact) {
    // 100 agents, k = 7: removing n/k seven times leaves exactly zero.
    Rational total{100};
    for (int t = 0; t < 7; ++t) total -= Rational(100, 7);
    EXPECT_EQ(total, Rational{0});
    EXPECT_LE(Rational(110, 11), Rational{10});
}

TEST(Rational, TextRoundTrip) {
    EXPECT_EQ(prfair::to_string(Rational(7, 3)), "7/3");
    EXPECT_EQ(prfair::to_string(Rational(4)), "4");
    EXPECT_EQ(prfair::to_string(Rational(-12, 18)), "-2/3");
    EXPECT_EQ(prfair::parse_rational("7/3"), Rational(7, 3));
    EXPECT_EQ(prfair::parse_rational("-5"), Rational{-5});
    EXPECT_EQ(prfair::parse_rational("4/6"), Rational(2, 3));
    EXPECT_DOUBLE_EQ(prfair::to_double(Rational(1, 4)), 0.25);
}

TEST(Rational, ParseRejectsMalformedText) {
    EXPECT_THROW((void)prfair::parse_rational(""), prfair::InputError);
    EXPECT_THROW((void)prfair::parse_rational("1/0"), prfair::InputError);
    EXPECT_THROW((void)prfair::parse_rational("1/2x"), prfair::InputError);
    EXPECT_THROW((void)prfair::parse_rational("half"), prfair::InputError);
}
