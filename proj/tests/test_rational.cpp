#include <gtest/gtest.h>

#include "schedcon/rational.hpp"

using schedcon::make_rational;
using schedcon::parse_rational;
using schedcon::Rational;
using schedcon::RationalParseError;

TEST(Rational, ParsesIntegersAndFractions) {
    EXPECT_EQ(parse_rational("24"), Rational(24));
    EXPECT_EQ(parse_rational("24/1"), Rational(24));
    EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
    EXPECT_EQ(parse_rational("-7/2"), make_rational(-7, 2));
    EXPECT_EQ(parse_rational("0"), Rational(0));
}

TEST(Rational, RejectsMalformedText) {
    for (const char* bad : {"", "/", "1/", "/2", "1/0", "1.5", "1/-2", "a", "1/2/3", " 1", "+-1"}) {
        EXPECT_THROW(parse_rational(bad), RationalParseError) << bad;
    }
}

TEST(Rational, CanonicalString) {
    EXPECT_EQ(schedcon::to_string(make_rational(12, 11)), "12/11");
    EXPECT_EQ(schedcon::to_string(make_rational(10, 5)), "2");
    EXPECT_EQ(schedcon::to_string(make_rational(-3, 6)), "-1/2");
    EXPECT_EQ(schedcon::to_string(Rational(0)), "0");
}

TEST(Rational, RoundTripsThroughText) {
    for (std::int64_t n = -20; n <= 20; ++n) {
        for (std::int64_t d = 1; d <= 9; ++d) {
            const Rational r = make_rational(n, d);
            EXPECT_EQ(parse_rational(schedcon::to_string(r)), r);
        }
    }
}

TEST(Rational, FloorCeilOnNegatives) {
    EXPECT_EQ(schedcon::floor(make_rational(-7, 2)), -4);
    EXPECT_EQ(schedcon::ceil(make_rational(-7, 2)), -3);
    EXPECT_EQ(schedcon::floor(make_rational(7, 2)), 3);
    EXPECT_EQ(schedcon::ceil(Rational(3)), 3);
    EXPECT_EQ(schedcon::floor_to_int64(make_rational(29, 3)), 9);
}

TEST(Rational, FloorToInt64Saturates) {
    const Rational huge = parse_rational("100000000000000000000000");
    EXPECT_EQ(schedcon::floor_to_int64(huge), std::numeric_limits<std::int64_t>::max());
    EXPECT_EQ(schedcon::floor_to_int64(-huge), std::numeric_limits<std::int64_t>::min());
}
