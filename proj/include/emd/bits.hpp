#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace emd {

// A bit sequence, one bit per byte (values 0/1). Bit i of a field symbol
// is the coefficient of x^i; packing is big-endian, so the FIRST bit of an
// m-bit group is the coefficient of x^(m-1).
using BitVec = std::vector<std::uint8_t>;

inline std::uint16_t bits_to_symbol(std::span<const std::uint8_t> bits) {
    std::uint16_t v = 0;
    for (const auto b : bits) v = static_cast<std::uint16_t>((v << 1) | (b & 1));
    return v;
}

inline void symbol_to_bits(std::uint16_t sym, int m, BitVec& out) {
    for (int i = m - 1; i >= 0; --i) out.push_back((sym >> i) & 1);
}

// MSB-first byte packing, zero-padded to a byte boundary.
inline std::vector<std::uint8_t> pack_bits(const BitVec& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

inline BitVec unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (bytes.size() * 8 < nbits) throw std::invalid_argument("unpack_bits: short buffer");
    BitVec out(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
    return out;
}

}  // namespace emd
