#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "emd/emdcodec.hpp"
#include "emd/errors.hpp"

namespace emd {

// Wire format, all multi-byte fields little-endian:
//   0   magic 0x45 0x4D 0x44 0x31 ("EMD1")
//   4   version u8 = 0x01
//   5   n u8, k u8, index u8 (1-based), regime u8 (0 uncoded, 1 mds),
//       m u8 (0 if uncoded)
//   10  alpha u16
//   12  d_k numerator u32, d_k denominator u32
//   20  payload bit length u32
//   24  payload, packed MSB-first, zero-padded to a byte boundary.
// Payload bit order: uncoded bits, then parity symbols (m bits each,
// high coefficient first).
inline constexpr std::uint8_t kPacketMagic[4] = {0x45, 0x4D, 0x44, 0x31};
inline constexpr std::uint8_t kPacketVersion = 0x01;
inline constexpr std::size_t kPacketHeaderSize = 24;

std::vector<std::uint8_t> serialize_packet(const MdParams& p, const Description& d);

/// Validates magic, version, parameter consistency (the header must
/// re-derive to the same configuration, and the payload bit length must
/// equal l * R exactly). Throws MalformedPacket with the byte offset of
/// the first offending byte.
std::pair<MdParams, Description> parse_packet(std::span<const std::uint8_t> bytes);

}  // namespace emd
