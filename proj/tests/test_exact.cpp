#include "gmn/exact.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gmn;

TEST_CASE("cross-multiplied ratio comparison") {
    REQUIRE(compare_exact({1, 2}, {2, 3}) == Ordering::Less);
    REQUIRE(compare_exact({5, 3}, {3, 2}) == Ordering::Greater);
    REQUIRE(compare_exact({2, 4}, {1, 2}) == Ordering::Equal);
    REQUIRE(compare_exact({194, 169}, {233, 194}) == Ordering::Less);
}

TEST_CASE("comparison against one") {
    REQUIRE(compare_to_one({16725, 33461}) == Ordering::Less);
    REQUIRE(compare_to_one({194, 169}) == Ordering::Greater);
    REQUIRE(compare_to_one({7, 7}) == Ordering::Equal);
}

TEST_CASE("decimal expansion truncates or rounds as asked") {
    REQUIRE(decimal_of_quotient(1, 3, 6) == "0.333333");
    REQUIRE(decimal_of_quotient(2, 3, 6) == "0.666666");
    REQUIRE(decimal_of_quotient(2, 3, 6, Rounding::Nearest) == "0.666667");
    REQUIRE(decimal_of_quotient(5, 4, 3) == "1.250");
    REQUIRE(decimal_of_quotient(194, 97, 4) == "2.0000");
    REQUIRE(decimal_of_quotient(1, 8, 2) == "0.12");
    REQUIRE(decimal_of_quotient(1, 8, 2, Rounding::Nearest) == "0.13");
    REQUIRE(decimal_of_quotient(1, 7, 12) == "0.142857142857");
    REQUIRE_THROWS_AS(decimal_of_quotient(1, 0, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(decimal_of_quotient(-1, 2, 3), std::invalid_argument);
}

TEST_CASE("ratio decimals truncate") {
    REQUIRE(to_decimal({12, 5}, 4) == "2.4000");
    REQUIRE(to_decimal({233, 194}, 6) == "1.201030");
    REQUIRE(to_decimal({9077, 16725}, 4) == "0.5427");
}

TEST_CASE("integer square root floor") {
    REQUIRE(isqrt_floor(0) == 0);
    REQUIRE(isqrt_floor(1) == 1);
    REQUIRE(isqrt_floor(2) == 1);
    REQUIRE(isqrt_floor(224) == 14);
    REQUIRE(isqrt_floor(225) == 15);
    const Nat big = Nat("123456789123456789");
    REQUIRE(isqrt_floor(big * big) == big);
    REQUIRE(isqrt_floor(big * big - 1) == big - 1);
}

TEST_CASE("powers of ten") {
    REQUIRE(pow10(0) == 1);
    REQUIRE(pow10(3) == 1000);
    REQUIRE(pow10(20) == Nat("100000000000000000000"));
}

TEST_CASE("integer parsing") {
    REQUIRE(parse_integer("42") == 42);
    REQUIRE(parse_integer("-7") == -7);
    REQUIRE(parse_integer("+9") == 9);
    REQUIRE_THROWS_AS(parse_integer(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_integer("-"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_integer("4x"), std::invalid_argument);
}

TEST_CASE("rational parsing accepts fractions, decimals, and exponents") {
    auto eq = [](const std::pair<Nat, Nat>& got, long num, long den) {
        return got.first == num && got.second == den;
    };
    REQUIRE(eq(parse_rational("20"), 20, 1));
    REQUIRE(eq(parse_rational("-6/5"), -6, 5));
    REQUIRE(eq(parse_rational("4/6"), 2, 3));
    REQUIRE(eq(parse_rational("-4/-6"), 2, 3));
    REQUIRE(eq(parse_rational("1.25"), 5, 4));
    REQUIRE(eq(parse_rational("-1.2"), -6, 5));
    REQUIRE(eq(parse_rational("0.5"), 1, 2));
    REQUIRE(eq(parse_rational("3e-4"), 3, 10000));
    REQUIRE(eq(parse_rational("2.5e1"), 25, 1));
    REQUIRE(eq(parse_rational("1e-6"), 1, 1000000));
    REQUIRE(eq(parse_rational("0"), 0, 1));
    REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("/"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1e"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}
