#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace emd {

// splitmix64 finalizer. Used both as the RNG state update and as the
// avalanche stage of the binning hash.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Deterministic 64-bit generator. All stochastic code in this library
// derives per-unit streams via fork(), so parallel and serial runs agree
// and CSV output is byte-identical for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Sub-stream for unit `index` (trial, subset, shard). Independent of
    // how many draws the parent has made.
    Rng fork(std::uint64_t index) const {
        return Rng(mix64(state_ ^ (index + 1) * 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool bit() { return next() >> 63; }

    // Uniform in [0, 1).
    double real() { return (next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; second value cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = real();
        while (u1 <= 0.0) u1 = real();
        const double u2 = real();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::vector<std::uint8_t> bits(std::size_t len) {
        std::vector<std::uint8_t> out(len);
        for (auto& b : out) b = static_cast<std::uint8_t>(bit());
        return out;
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace emd
