#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emd/binning.hpp"
#include "emd/rng.hpp"
#include "oracles.hpp"

using namespace emd;
using test::combinations;

namespace {

BinningConfig reference_config(std::uint64_t seed = 0x9e1) {
    return make_binning_config(4, 2, Rational(1, 4), Rational(1, 16), 64, seed);
}

std::vector<BinMessage> pick(const std::vector<BinMessage>& all,
                             std::initializer_list<int> idx) {
    std::vector<BinMessage> out;
    for (const int i : idx) out.push_back(all[static_cast<std::size_t>(i - 1)]);
    return out;
}

}  // namespace

TEST_CASE("configuration invariants") {
    const auto cfg = reference_config();
    CHECK(cfg.r_prime == Rational(3, 16));
    CHECK(cfg.bin_bits == 12);  // 64 * 3/16
    CHECK(cfg.bins == 4096);
    CHECK(cfg.part_len == 16);
    CHECK(cfg.erased_per_part == 8);
    CHECK(cfg.known_per_part == 8);

    CHECK_THROWS_AS(make_binning_config(4, 2, Rational(3, 5), Rational(0), 20, 1),
                    std::invalid_argument);  // not below 1 - k/n
    CHECK_THROWS_AS(make_binning_config(4, 2, Rational(1, 4), Rational(1, 16), 60, 1),
                    std::invalid_argument);  // n does not divide l... 60 is divisible; erased not integral
    CHECK_THROWS_AS(make_binning_config(4, 2, Rational(1, 4), Rational(1, 7), 64, 1),
                    std::invalid_argument);  // bin width not integral
}

TEST_CASE("equal erased versions map to equal bins at every encoder") {
    const auto cfg = reference_config();
    Rng rng(0x1234);
    for (int t = 0; t < 50; ++t) {
        auto a = rng.bits(64);
        auto b = a;
        // Flip bits only inside the erased tails: same erased version.
        for (int part = 0; part < 4; ++part)
            for (int u = 8; u < 16; ++u)
                b[static_cast<std::size_t>(16 * part + u)] ^= rng.bit() ? 1 : 0;
        const auto ma = encode_bin(cfg, a);
        const auto mb = encode_bin(cfg, b);
        for (int i = 0; i < 4; ++i)
            REQUIRE(ma[static_cast<std::size_t>(i)].bin_index ==
                    mb[static_cast<std::size_t>(i)].bin_index);
    }
}

TEST_CASE("message rate is 1/n + r_prime bits per symbol") {
    const auto cfg = reference_config();
    Rng rng(0x4321);
    const auto msgs = encode_bin(cfg, rng.bits(64));
    for (const auto& m : msgs) {
        const auto bits = static_cast<long long>(m.part_bits.size()) + cfg.bin_bits;
        CHECK(Rational(bits, cfg.l) == Rational(1, cfg.n) + cfg.r_prime);
    }
}

TEST_CASE("decoding distortions") {
    const auto cfg = reference_config();
    Rng rng(0xfeed);
    const auto source = rng.bits(64);
    const auto msgs = encode_bin(cfg, source);

    SUBCASE("single message: 16 of 64 revealed, distortion 3/4") {
        const auto rec = decode_bin(cfg, pick(msgs, {2}));
        CHECK(rec.erasure_count() == 48);
        CHECK(rec.distortion_vs(source) == Rational(3, 4));
    }
    SUBCASE("unique survivor with k messages: distortion d_k") {
        const auto rec = decode_bin(cfg, pick(msgs, {1, 3}));
        // Collisions are possible but rare; this seed decodes cleanly.
        REQUIRE(rec.erasure_count() != 64);
        CHECK(rec.distortion_vs(source) == Rational(1, 4));
        CHECK_FALSE(rec.contradicts(source));
    }
    SUBCASE("three messages: distortion 1/8") {
        const auto rec = decode_bin(cfg, pick(msgs, {1, 2, 4}));
        REQUIRE(rec.erasure_count() != 64);
        CHECK(rec.distortion_vs(source) == Rational(1, 8));
    }
    SUBCASE("all four messages reveal everything uncoded") {
        const auto rec = decode_bin(cfg, pick(msgs, {1, 2, 3, 4}));
        CHECK(rec.distortion_vs(source) == Rational(0));
    }
    SUBCASE("duplicate indices rejected") {
        CHECK_THROWS_AS(decode_bin(cfg, pick(msgs, {1, 1})), std::invalid_argument);
    }
}

TEST_CASE("successful decodes equal the erased version united with the parts") {
    const auto cfg = reference_config(0x777);
    Rng rng(0x31337);
    int successes = 0;
    for (int t = 0; t < 40; ++t) {
        const auto source = rng.fork(static_cast<std::uint64_t>(t)).bits(64);
        const auto msgs = encode_bin(cfg, source);
        for (const auto& subset : combinations(4, 2)) {
            std::vector<BinMessage> rx;
            for (const int c : subset) rx.push_back(msgs[static_cast<std::size_t>(c)]);
            const auto rec = decode_bin(cfg, rx);
            if (rec.erasure_count() == 64) continue;  // ambiguity, legal
            ++successes;
            REQUIRE_FALSE(rec.contradicts(source));
            REQUIRE(rec.distortion_vs(source) == Rational(1, 4));
            // Every known position of the erased version must be revealed.
            for (int part = 0; part < 4; ++part)
                for (int u = 0; u < 8; ++u)
                    REQUIRE_FALSE(rec.erased(static_cast<std::size_t>(16 * part + u)));
        }
    }
    CHECK(successes > 200);  // nearly all of the 240 subset decodes
}

TEST_CASE("candidate space size and the desk-scale cap") {
    const auto cfg = reference_config();
    CHECK((cfg.n - cfg.k) * cfg.known_per_part == 16);  // 2^16 candidates

    // Doubling l doubles the bound exponent but overflows the cap.
    const auto big = make_binning_config(4, 2, Rational(1, 4), Rational(1, 16), 128, 1);
    CHECK((big.n - big.k) * big.known_per_part == 32);
    Rng rng(0x9);
    const auto msgs = encode_bin(big, rng.bits(128));
    CHECK_THROWS_AS(decode_bin(big, pick(msgs, {1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(estimate_error_prob(big, 10, 1), std::invalid_argument);
}

TEST_CASE("collision probability stays under the analytic bound") {
    const auto cfg = reference_config(0x5151);
    const auto est = estimate_error_prob(cfg, 400, 0xabcdef);
    CHECK(est.analytic_bound == doctest::Approx(6.0 / 256.0));
    CHECK(est.p_hat <= est.analytic_bound + est.half_width);

    SUBCASE("epsilon = 0 is vacuous but still runs") {
        const auto flat = make_binning_config(4, 2, Rational(1, 4), Rational(0), 64, 3);
        CHECK(flat.bin_bits == 8);
        const auto e0 = estimate_error_prob(flat, 60, 0x11);
        CHECK(e0.analytic_bound == doctest::Approx(6.0));
        CHECK(e0.p_hat <= 1.0);
    }
}

TEST_CASE("bound arithmetic for the doubled blocklength") {
    const auto big = make_binning_config(4, 2, Rational(1, 4), Rational(1, 16), 128, 1);
    const Rational exponent = Rational(big.l) * big.k * big.epsilon;
    CHECK(exponent == Rational(16));
    CHECK(6.0 * std::pow(2.0, -16.0) == doctest::Approx(6.0 / 65536.0));
}
