#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emd/infoverify.hpp"

using namespace emd;

TEST_CASE("multi_info basics") {
    SUBCASE("single coordinate is zero") {
        JointPmf j{{3}, {0.2, 0.5, 0.3}};
        CHECK(multi_info(j) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("independent product is zero") {
        // p(x) = (0.3, 0.7), p(y) = (0.4, 0.6) as a product table.
        JointPmf j{{2, 2}, {0.3 * 0.4, 0.3 * 0.6, 0.7 * 0.4, 0.7 * 0.6}};
        CHECK(multi_info(j) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("two perfectly correlated fair bits carry one bit") {
        JointPmf j{{2, 2}, {0.5, 0.0, 0.0, 0.5}};
        CHECK(multi_info(j) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("three mutually correlated fair bits: I_3 = 2") {
        JointPmf j{{2, 2, 2}, {0.5, 0, 0, 0, 0, 0, 0, 0.5}};
        CHECK(multi_info(j) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("unnormalized and negative inputs are rejected") {
        CHECK_THROWS_AS(multi_info(JointPmf{{2}, {0.6, 0.6}}), std::invalid_argument);
        CHECK_THROWS_AS(multi_info(JointPmf{{2}, {1.5, -0.5}}), std::invalid_argument);
        CHECK_THROWS_AS(multi_info(JointPmf{{2, 2}, {1.0}}), std::invalid_argument);
    }
}

TEST_CASE("deterministic maps") {
    JointPmf j{{2, 2}, {0.5, 0.0, 0.0, 0.5}};
    SUBCASE("identity map preserves multi_info") {
        const auto mapped = apply_map(j, {0}, {0, 1}, 2);
        CHECK(multi_info(mapped) == doctest::Approx(multi_info(j)).epsilon(1e-12));
    }
    SUBCASE("constant map drops the coordinate's contribution") {
        const auto mapped = apply_map(j, {0}, {0, 0}, 1);
        CHECK(multi_info(mapped) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(multi_info(mapped) < multi_info(j));
    }
}

TEST_CASE("property suite on random joints") {
    const auto rep = check_multi_info_properties(1000, 0x5eed);
    CHECK(rep.trials == 1000);
    CHECK(rep.violations_nonneg == 0);
    CHECK(rep.violations_grouping == 0);
    CHECK(rep.violations_dataproc == 0);
    CHECK(rep.violations_perm == 0);
    CHECK(rep.pass());
}

TEST_CASE("closed-form bounds") {
    SUBCASE("lemma2: n (1/2)^(1/k) >= n - 1 when (1-1/n)^k <= 1/2") {
        CHECK(lemma2_bound(8, 6) == doctest::Approx(8.0 * std::pow(0.5, 1.0 / 6)));
        CHECK(lemma2_bound(8, 6) >= 7.0);
        CHECK(std::pow(7.0 / 8.0, 6) <= 0.5);
        CHECK_THROWS_AS(lemma2_bound(8, 2), std::invalid_argument);
    }
    SUBCASE("lemma3 values") {
        CHECK(lemma3_bound(1.0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(lemma3_bound(0.8) == doctest::Approx(0.5 + 0.16 / 0.6).epsilon(1e-9));
        CHECK_THROWS_AS(lemma3_bound(0.5), std::invalid_argument);
        CHECK_THROWS_AS(lemma3_bound(1.1), std::invalid_argument);
    }
    SUBCASE("lemma5 values") {
        CHECK(lemma5_bound(2) == doctest::Approx(0.0));
        CHECK(lemma5_bound(8) == doctest::Approx(0.75));
        CHECK_THROWS_AS(lemma5_bound(0), std::invalid_argument);
    }
    SUBCASE("dispatch wrapper") {
        CHECK(lemma_bound_eval(LemmaId::lemma2, 8, 6) ==
              doctest::Approx(lemma2_bound(8, 6)));
        CHECK(lemma_bound_eval(LemmaId::lemma3, 0.8) ==
              doctest::Approx(lemma3_bound(0.8)));
        CHECK(lemma_bound_eval(LemmaId::lemma5, 8) == doctest::Approx(0.75));
    }
}

TEST_CASE("scalar minimization reproduces the closed-form minimum") {
    const auto res = corollary2_search();
    CHECK(res.minimum == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(std::abs(res.argmin - (0.5 + 1.0 / std::sqrt(12.0))) < 1e-4);
    // Endpoint sanity: x = 1 evaluates to 3.5.
    CHECK(2.0 * 1.0 + 1.0 + 0.5 == doctest::Approx(3.5));
    CHECK(res.margin == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("pairwise-independent erased-version search stays above n - 1") {
    for (int n : {2, 3, 4}) {
        const auto res = lemma1_search(n, 3000, 0xabc + static_cast<std::uint64_t>(n));
        CHECK(res.feasible_samples == 3000);
        CHECK(res.minimum >= n - 1.0 - 1e-6);
        CHECK(res.minimum <= n - 1.0 + 1e-9);  // the corner points attain it
    }
    CHECK_THROWS_AS(lemma1_search(7, 10, 1), std::invalid_argument);
}
