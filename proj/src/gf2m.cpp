#include "emd/gf2m.hpp"

#include <stdexcept>
#include <string>

namespace emd {

std::uint32_t Field::primitive_poly(int m) {
    // One primitive polynomial per degree, the lexicographically common
    // choices found in coding handbooks.
    static constexpr std::uint32_t kPoly[17] = {
        0,
        0x3,      // x + 1
        0x7,      // x^2 + x + 1
        0xB,      // x^3 + x + 1
        0x13,     // x^4 + x + 1
        0x25,     // x^5 + x^2 + 1
        0x43,     // x^6 + x + 1
        0x89,     // x^7 + x^3 + 1
        0x11D,    // x^8 + x^4 + x^3 + x^2 + 1
        0x211,    // x^9 + x^4 + 1
        0x409,    // x^10 + x^3 + 1
        0x805,    // x^11 + x^2 + 1
        0x1053,   // x^12 + x^6 + x^4 + x + 1
        0x201B,   // x^13 + x^4 + x^3 + x + 1
        0x4443,   // x^14 + x^10 + x^6 + x + 1
        0x8003,   // x^15 + x + 1
        0x1100B,  // x^16 + x^12 + x^3 + x + 1
    };
    if (m < 1 || m > 16)
        throw std::invalid_argument("unsupported field degree " + std::to_string(m) +
                                    " (supported: 1..16)");
    return kPoly[m];
}

Field::Field(int m) : m_(m), q_(0), poly_(primitive_poly(m)) {
    q_ = 1u << m_;
    antilog_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        antilog_[i] = static_cast<std::uint16_t>(v);
        log_[v] = i;
        v <<= 1;
        if (v & q_) v ^= poly_;
    }
    // Primitivity check: the orbit of x must return to 1 only after q-1 steps.
    if (v != 1) throw std::logic_error("polynomial table is not primitive");
}

std::uint16_t Field::inv(std::uint16_t a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(2^m)");
    return antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint16_t Field::pow(std::uint16_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t le = static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1));
    return antilog_[le % (q_ - 1)];
}

}  // namespace emd
