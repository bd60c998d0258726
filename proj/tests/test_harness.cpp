#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "emd/harness.hpp"
#include "emd/packet.hpp"
#include "emd/rng.hpp"

using namespace emd;

TEST_CASE("packet round trip is bit exact") {
    for (const auto& p : {derive_params(4, 2, Rational(1, 4)),
                          derive_params(4, 2, Rational(3, 5)),
                          derive_params(4, 2, Rational(1, 4), 3),
                          derive_params(3, 3, Rational(0))}) {
        std::unique_ptr<GeneratorSet> gs;
        if (p.regime == Regime::mds)
            gs = std::make_unique<GeneratorSet>(p.n, p.k, Field(p.m));
        Rng rng(0x707 + static_cast<std::uint64_t>(p.l));
        const auto source = rng.bits(static_cast<std::size_t>(p.l));
        for (const auto& d : encode(p, source, gs.get())) {
            const auto bytes = serialize_packet(p, d);
            const auto [q, back] = parse_packet(bytes);
            CHECK(back == d);
            CHECK(q.n == p.n);
            CHECK(q.k == p.k);
            CHECK(q.d_k == p.d_k);
            CHECK(q.alpha == p.alpha);
            CHECK(q.l == p.l);
            // Re-serialization reproduces the bytes.
            CHECK(serialize_packet(q, back) == bytes);
        }
    }
}

TEST_CASE("packet validation errors carry the byte offset") {
    const auto p = derive_params(4, 2, Rational(1, 4));
    GeneratorSet gs(4, 2, Field(3));
    Rng rng(0xbe);
    auto bytes = serialize_packet(p, encode(p, rng.bits(48), &gs)[0]);

    SUBCASE("flipped magic byte reports offset 0") {
        auto bad = bytes;
        bad[0] ^= 0xff;
        try {
            parse_packet(bad);
            FAIL("expected MalformedPacket");
        } catch (const MalformedPacket& e) {
            CHECK(e.offset == 0);
        }
    }
    SUBCASE("bad version reports offset 4") {
        auto bad = bytes;
        bad[4] = 0x02;
        try {
            parse_packet(bad);
            FAIL("expected MalformedPacket");
        } catch (const MalformedPacket& e) {
            CHECK(e.offset == 4);
        }
    }
    SUBCASE("payload bit length must equal l*R") {
        auto bad = bytes;
        bad[20] = 17;  // 18 -> 17
        try {
            parse_packet(bad);
            FAIL("expected MalformedPacket");
        } catch (const MalformedPacket& e) {
            CHECK(e.offset == 20);
        }
    }
    SUBCASE("truncation is detected") {
        auto bad = bytes;
        bad.resize(bytes.size() - 1);
        CHECK_THROWS_AS(parse_packet(bad), MalformedPacket);
        bad.resize(10);
        CHECK_THROWS_AS(parse_packet(bad), MalformedPacket);
    }
}

TEST_CASE("explicit subset simulation") {
    const auto p = derive_params(4, 2, Rational(1, 4));
    SUBCASE("subset {1,2} gives distortion 1/4 rows, all matching") {
        const auto rep = run_subset_sim(p, LossModel::explicit_set({1, 2}), 10, 0x99);
        CHECK(rep.rows.size() == 10);
        for (const auto& r : rep.rows) {
            CHECK(r.dist == Rational(1, 4));
            CHECK(r.match);
            CHECK(r.subset == "1|2");
        }
        CHECK(rep.all_match());
    }
    SUBCASE("empty subset is a distortion-1 row") {
        const auto rep = run_subset_sim(p, LossModel::explicit_set({}), 3, 0x99);
        for (const auto& r : rep.rows) {
            CHECK(r.dist == Rational(1));
            CHECK(r.m == 0);
            CHECK(r.match);
        }
    }
}

TEST_CASE("bernoulli loss simulation") {
    const auto p = derive_params(4, 2, Rational(1, 4));
    SUBCASE("loss 0 keeps everything: distortion D_n") {
        const auto rep = run_subset_sim(p, LossModel::bernoulli(0.0), 5, 0x1);
        for (const auto& r : rep.rows) {
            CHECK(r.m == 4);
            CHECK(r.dist == Rational(0));
            CHECK(r.match);
        }
        CHECK(rep.reception_histogram.at(4) == 5);
    }
    SUBCASE("loss 1 drops everything") {
        const auto rep = run_subset_sim(p, LossModel::bernoulli(1.0), 5, 0x1);
        for (const auto& r : rep.rows) {
            CHECK(r.m == 0);
            CHECK(r.dist == Rational(1));
        }
    }
    SUBCASE("intermediate loss fills the histogram and matches per count") {
        const auto rep = run_subset_sim(p, LossModel::bernoulli(0.4), 200, 0x2);
        long total = 0;
        for (const auto& [m, c] : rep.reception_histogram) total += c;
        CHECK(total == 200);
        CHECK(rep.all_match());
    }
}

TEST_CASE("intermediate-performance sweep") {
    SweepSpec s;
    s.n = 10;
    s.k_list = {3};
    s.d_k = Rational(0);
    s.trials = 2;
    s.seed = 0xfeed;
    const auto rep = sweep_intermediate(s);
    REQUIRE(rep.rows.size() == 10);
    // 9/10, 8/10, then zero once k descriptions arrive.
    CHECK(rep.rows[0].dist == Rational(9, 10));
    CHECK(rep.rows[1].dist == Rational(8, 10));
    for (int m = 3; m <= 10; ++m)
        CHECK(rep.rows[static_cast<std::size_t>(m - 1)].dist == Rational(0));
    CHECK(rep.all_match());
}

TEST_CASE("sweep covers k = 1 repetition and the k = n straight line") {
    SweepSpec s;
    s.n = 5;
    s.k_list = {1, 5};
    s.d_k = Rational(0);
    s.trials = 2;
    s.seed = 0x3;
    const auto rep = sweep_intermediate(s);
    REQUIRE(rep.rows.size() == 10);
    for (int m = 1; m <= 5; ++m) {
        CHECK(rep.rows[static_cast<std::size_t>(m - 1)].dist == Rational(0));
        CHECK(rep.rows[static_cast<std::size_t>(4 + m)].dist == Rational(5 - m, 5));
    }
    CHECK(rep.all_match());
}

TEST_CASE("CSV output is deterministic and uses the fixed schema") {
    SweepSpec s;
    s.n = 4;
    s.k_list = {2};
    s.d_k = Rational(1, 4);
    s.trials = 3;
    s.seed = 0xabcd;
    std::ostringstream a, b;
    write_report_csv(sweep_intermediate(s), a);
    write_report_csv(sweep_intermediate(s), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, a.str().find('\n')) ==
          "n,k,dk_num,dk_den,m,subset,dist_num,dist_den,pred_num,pred_den,match");
    const auto rep = run_subset_sim(derive_params(4, 2, Rational(1, 4)),
                                    LossModel::explicit_set({1, 3}), 1, 1);
    std::ostringstream c;
    write_report_csv(rep, c);
    CHECK(c.str().find("4,2,1,4,2,1|3,1,4,1,4,1") != std::string::npos);
}

TEST_CASE("subset string parsing") {
    CHECK(parse_subset("1,3,4") == std::vector<int>{1, 3, 4});
    CHECK(parse_subset("4,3,3,1") == std::vector<int>{1, 3, 4});
    CHECK(parse_subset("").empty());
}

TEST_CASE("rational parsing accepts fractions and exact decimals") {
    CHECK(parse_rational("1/4") == Rational(1, 4));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK(parse_rational("1.125") == Rational(9, 8));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/4x"), std::invalid_argument);
}
