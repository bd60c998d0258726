#pragma once

#include <cstdint>
#include <vector>

namespace emd {

/// Exact arithmetic in GF(2^m), 1 <= m <= 16.
///
/// Elements are integers in [0, 2^m); bit i is the coefficient of x^i.
/// Addition is XOR. Multiplication and inversion go through discrete
/// log/antilog tables over the multiplicative group of size 2^m - 1.
/// The primitive polynomial per degree is fixed (see primitive_poly), so
/// codewords are bit-identical across builds and platforms.
///
/// A Field is immutable after construction; all operations are pure and
/// safe to share across threads.
class Field {
  public:
    /// Builds the tables. Throws std::invalid_argument for m outside 1..16.
    explicit Field(int m);

    int degree() const { return m_; }
    std::uint32_t order() const { return q_; }          // 2^m
    std::uint32_t poly() const { return poly_; }        // includes the x^m term

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return a ^ b; }

    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return antilog_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    /// Multiplicative inverse. Throws std::domain_error on a == 0.
    std::uint16_t inv(std::uint16_t a) const;

    std::uint16_t pow(std::uint16_t a, std::uint64_t e) const;

    /// alpha^e for the primitive element alpha = x.
    std::uint16_t alpha_pow(std::uint32_t e) const { return antilog_[e % (q_ - 1)]; }

    std::uint32_t log(std::uint16_t a) const { return log_[a]; }

    /// The fixed primitive polynomial for each supported degree, as a
    /// bitmask including the leading term.
    static std::uint32_t primitive_poly(int m);

  private:
    int m_;
    std::uint32_t q_;
    std::uint32_t poly_;
    std::vector<std::uint16_t> antilog_;  // antilog_[i] = alpha^i, size q-1
    std::vector<std::uint32_t> log_;      // log_[antilog_[i]] = i, log_[0] unused
};

}  // namespace emd
