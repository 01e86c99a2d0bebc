#include "mwc/error.hpp"
#include "mwc/format.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace mwc;

TEST(Format, ShortestRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.0 / 11.0, std::sqrt(5.0) - 2.0, -2.5, 123456789.0})
        EXPECT_EQ(parse_double(format_double(x)), x);
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Format, StrictParsing) {
    EXPECT_EQ(parse_double("1.5e-3"), 1.5e-3);
    EXPECT_THROW(parse_double("1.5x"), Error);
    EXPECT_THROW(parse_double(""), Error);
    EXPECT_THROW(parse_double("nan"), Error);
    EXPECT_EQ(parse_int("42"), 42);
    EXPECT_THROW(parse_int("4.2"), Error);
    EXPECT_THROW(parse_int("abc"), Error);
    try {
        parse_double("zz");
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "parse_error");
    }
}
