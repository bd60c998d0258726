#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emd/ceosim.hpp"

using namespace emd;

TEST_CASE("g function") {
    CHECK(g_func(1.0, 0.4) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g_func(1.3, 0.4) == doctest::Approx(0.0));
    CHECK(g_func(0.4, 0.4) == doctest::Approx(binary_entropy(0.4)).epsilon(1e-12));
    CHECK_THROWS_AS(g_func(0.2, 0.4), std::domain_error);
    CHECK_THROWS_AS(g_func(0.5, 0.0), std::domain_error);
}

TEST_CASE("g is non-increasing and g(y^(1/n)) is convex in y") {
    for (const double p : {0.3, 0.4, 0.5}) {
        SUBCASE("monotone on [p, 1]") {
            double prev = 1e9;
            for (int i = 0; i <= 1000; ++i) {
                const double x = p + (1.0 - p) * i / 1000.0;
                const double v = g_func(x, p);
                CHECK(v <= prev + 1e-9);
                prev = v;
            }
        }
        for (const int n : {2, 3, 4}) {
            CAPTURE(p);
            CAPTURE(n);
            // Second differences on a uniform grid of y in [p^n, 1.2].
            const double lo = std::pow(p, n);
            const double hi = 1.2;
            const int grid = 1000;
            const double h = (hi - lo) / grid;
            std::vector<double> vals;
            for (int i = 0; i <= grid; ++i) {
                const double y = lo + h * i;
                vals.push_back(g_func(std::pow(y, 1.0 / n), p));
            }
            for (int i = 1; i < grid; ++i)
                REQUIRE(vals[static_cast<std::size_t>(i + 1)] -
                            2 * vals[static_cast<std::size_t>(i)] +
                            vals[static_cast<std::size_t>(i - 1)] >=
                        -1e-9);
        }
    }
}

TEST_CASE("symmetric ceo rate") {
    SUBCASE("d_k = 1 conveys nothing") {
        CHECK(ceo_rate(3, 1.0, 0.4) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("at the distortion floor the rate is (1-p^k)/k + h(p)") {
        const double p = 0.4;
        const int k = 2;
        CHECK(ceo_rate(k, std::pow(p, k), p) ==
              doctest::Approx((1.0 - std::pow(p, k)) / k + binary_entropy(p))
                  .epsilon(1e-12));
    }
    SUBCASE("k=2, d_k=0.25, p=0.4") {
        CHECK(ceo_rate(2, 0.25, 0.4) ==
              doctest::Approx(0.375 + g_func(0.5, 0.4)).epsilon(1e-12));
    }
    SUBCASE("below the floor is infeasible") {
        CHECK_THROWS_AS(ceo_rate(2, 0.1, 0.4), std::domain_error);
    }
}

TEST_CASE("distortion tradeoff bound") {
    CHECK(tradeoff_bound(0.25, 2, 2) == doctest::Approx(0.25));
    CHECK(tradeoff_bound(0.25, 2, 4) == doctest::Approx(0.0625));
    CHECK(tradeoff_bound(1.0, 3, 7) == doctest::Approx(1.0));
    CHECK(tradeoff_bound(0.0, 2, 3) == doctest::Approx(0.0));
    CHECK_THROWS_AS(tradeoff_bound(0.25, 3, 2), std::domain_error);

    SUBCASE("chain consistency through an intermediate level") {
        for (const double d : {0.1, 0.3, 0.7})
            for (int k = 1; k <= 3; ++k)
                for (int j = k; j <= 5; ++j)
                    for (int ell = j; ell <= 6; ++ell) {
                        const double direct = tradeoff_bound(d, k, ell);
                        const double chained =
                            tradeoff_bound(tradeoff_bound(d, k, j), j, ell);
                        REQUIRE(std::abs(direct - chained) <= 1e-12);
                    }
    }
}

TEST_CASE("per-bit reveal simulator") {
    CeoParams cp;
    cp.n = 6;
    cp.k = 2;
    cp.p = 0.4;
    cp.trials = 100000;
    cp.seed = 0xce0;

    SUBCASE("degenerate reveal probabilities") {
        cp.q_reveal = 0.0;
        cp.trials = 2000;
        for (int ell = 1; ell <= 3; ++ell)
            CHECK(simulate_reveal_scheme(cp, ell).measured == doctest::Approx(0.0));
        cp.q_reveal = 1.0;
        for (int ell = 1; ell <= 3; ++ell)
            CHECK(simulate_reveal_scheme(cp, ell).measured == doctest::Approx(1.0));
    }
    SUBCASE("q = 0.5, ell = 3 lands within 3 sigma of 1/8") {
        cp.q_reveal = 0.5;
        const auto r = simulate_reveal_scheme(cp, 3);
        const double sigma = std::sqrt(0.125 * 0.875 / cp.trials);
        CHECK(std::abs(r.measured - 0.125) <= 3.0 * sigma);
    }
    SUBCASE("q = d_k^(1/k) meets the tradeoff bound") {
        const double d_k = 0.25;
        cp.q_reveal = std::sqrt(d_k);
        for (int ell = cp.k; ell <= 5; ++ell) {
            const auto r = simulate_reveal_scheme(cp, ell);
            const double bound = tradeoff_bound(d_k, cp.k, ell);
            const double sigma = std::sqrt(bound * (1.0 - bound) / cp.trials);
            CHECK(std::abs(r.measured - bound) <= 4.0 * sigma);
        }
    }
}
