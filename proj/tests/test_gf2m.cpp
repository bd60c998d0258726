#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "emd/gf2m.hpp"
#include "emd/rng.hpp"
#include "oracles.hpp"

using emd::Field;
using emd::Rng;
using emd::test::slow_gf_inv;
using emd::test::slow_gf_mul;

TEST_CASE("field construction") {
    SUBCASE("GF(2): multiplication is AND") {
        Field f(1);
        CHECK(f.order() == 2);
        for (std::uint16_t a = 0; a < 2; ++a)
            for (std::uint16_t b = 0; b < 2; ++b) CHECK(f.mul(a, b) == (a & b));
    }
    SUBCASE("GF(8) uses x^3 + x + 1 and the orbit of x has size 7") {
        Field f(3);
        CHECK(f.poly() == 0b1011);
        // Primitivity oracle: enumerate powers of x with slow reduction.
        std::uint32_t v = 1;
        int steps = 0;
        do {
            v = slow_gf_mul(v, 2, 3, 0b1011);
            ++steps;
        } while (v != 1);
        CHECK(steps == 7);
    }
    SUBCASE("degree out of range") {
        CHECK_THROWS_AS(Field(17), std::invalid_argument);
        CHECK_THROWS_AS(Field(0), std::invalid_argument);
    }
}

TEST_CASE("multiplication examples") {
    Field f(3);
    CHECK(f.mul(0, 5) == 0);
    CHECK(f.mul(1, 5) == 5);
    // x * x^2 = x^3 = x + 1 under x^3 + x + 1.
    CHECK(slow_gf_mul(2, 4, 3, 0b1011) == 3);
    CHECK(f.mul(2, 4) == 3);
}

TEST_CASE("inverse examples") {
    Field f(3);
    CHECK(f.inv(1) == 1);
    CHECK(slow_gf_inv(2, 3, 0b1011) == 5);
    CHECK(f.inv(2) == 5);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("tables agree with polynomial arithmetic on random pairs") {
    Rng rng(0xf1e1d);
    for (int m = 1; m <= 16; ++m) {
        Field f(m);
        const std::uint32_t q = f.order();
        for (int t = 0; t < 2000; ++t) {
            const auto a = static_cast<std::uint16_t>(rng.below(q));
            const auto b = static_cast<std::uint16_t>(rng.below(q));
            CHECK(f.mul(a, b) == slow_gf_mul(a, b, m, f.poly()));
        }
    }
}

TEST_CASE("distributivity over XOR addition") {
    Rng rng(0xd15b);
    for (int m = 1; m <= 16; ++m) {
        Field f(m);
        const std::uint32_t q = f.order();
        for (int t = 0; t < 10000; ++t) {
            const auto a = static_cast<std::uint16_t>(rng.below(q));
            const auto b = static_cast<std::uint16_t>(rng.below(q));
            const auto c = static_cast<std::uint16_t>(rng.below(q));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            REQUIRE(f.mul(a, b) == f.mul(b, a));
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.add(a, a) == 0);
        }
    }
}

TEST_CASE("every nonzero element has an inverse, exhaustive for m <= 8") {
    for (int m = 1; m <= 8; ++m) {
        Field f(m);
        for (std::uint32_t a = 1; a < f.order(); ++a)
            REQUIRE(f.mul(static_cast<std::uint16_t>(a),
                          f.inv(static_cast<std::uint16_t>(a))) == 1);
    }
}

TEST_CASE("antilog/log tables are mutually inverse") {
    for (int m : {1, 3, 8, 16}) {
        Field f(m);
        for (std::uint32_t x = 1; x < f.order(); ++x)
            REQUIRE(f.alpha_pow(f.log(static_cast<std::uint16_t>(x))) == x);
    }
}
