#include "emd/packet.hpp"

#include <limits>

#include "emd/bits.hpp"

namespace emd {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

BitVec payload_bits_of(const MdParams& p, const Description& d) {
    BitVec bits = d.uncoded_bits;
    for (const auto sym : d.parity_symbols) symbol_to_bits(sym, p.m, bits);
    return bits;
}

}  // namespace

std::vector<std::uint8_t> serialize_packet(const MdParams& p, const Description& d) {
    if (p.d_k.numerator() < 0 ||
        p.d_k.numerator() > std::numeric_limits<std::uint32_t>::max() ||
        p.d_k.denominator() > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("d_k does not fit the wire format");
    const BitVec bits = payload_bits_of(p, d);

    std::vector<std::uint8_t> out(std::begin(kPacketMagic), std::end(kPacketMagic));
    out.push_back(kPacketVersion);
    out.push_back(static_cast<std::uint8_t>(p.n));
    out.push_back(static_cast<std::uint8_t>(p.k));
    out.push_back(static_cast<std::uint8_t>(d.index));
    out.push_back(static_cast<std::uint8_t>(p.regime == Regime::mds ? 1 : 0));
    out.push_back(static_cast<std::uint8_t>(p.m));
    put_u16(out, static_cast<std::uint16_t>(p.alpha));
    put_u32(out, static_cast<std::uint32_t>(p.d_k.numerator()));
    put_u32(out, static_cast<std::uint32_t>(p.d_k.denominator()));
    put_u32(out, static_cast<std::uint32_t>(bits.size()));
    const auto packed = pack_bits(bits);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

std::pair<MdParams, Description> parse_packet(std::span<const std::uint8_t> bytes) {
    for (std::size_t i = 0; i < 4; ++i) {
        if (bytes.size() <= i) throw MalformedPacket(i, "truncated magic");
        if (bytes[i] != kPacketMagic[i]) throw MalformedPacket(i, "bad magic byte");
    }
    if (bytes.size() < 5) throw MalformedPacket(4, "truncated before version");
    if (bytes[4] != kPacketVersion) throw MalformedPacket(4, "unsupported version");
    if (bytes.size() < kPacketHeaderSize)
        throw MalformedPacket(bytes.size(), "truncated header");

    const int n = bytes[5];
    const int k = bytes[6];
    const int index = bytes[7];
    const int regime = bytes[8];
    const int m = bytes[9];
    const int alpha = get_u16(bytes, 10);
    const std::uint32_t num = get_u32(bytes, 12);
    const std::uint32_t den = get_u32(bytes, 16);
    const std::uint32_t payload_bits = get_u32(bytes, 20);

    if (regime != 0 && regime != 1) throw MalformedPacket(8, "unknown regime");
    if (den == 0) throw MalformedPacket(16, "zero d_k denominator");

    MdParams p;
    try {
        p = derive_params(n, k, Rational(num, den), alpha);
    } catch (const std::exception& e) {
        throw MalformedPacket(5, std::string("invalid parameters: ") + e.what());
    }
    if ((p.regime == Regime::mds ? 1 : 0) != regime)
        throw MalformedPacket(8, "regime does not match the parameters");
    if (p.m != m) throw MalformedPacket(9, "field degree does not match the parameters");
    if (index < 1 || index > n) throw MalformedPacket(7, "description index out of range");
    if (static_cast<std::int64_t>(payload_bits) != p.payload_bits)
        throw MalformedPacket(20, "payload bit length does not equal l*R for these parameters");

    const std::size_t payload_bytes = (payload_bits + 7) / 8;
    if (bytes.size() < kPacketHeaderSize + payload_bytes)
        throw MalformedPacket(bytes.size(), "truncated payload");

    const BitVec bits =
        unpack_bits(bytes.subspan(kPacketHeaderSize, payload_bytes), payload_bits);

    Description d;
    d.index = index;
    const std::size_t unc = p.regime == Regime::mds
                                ? static_cast<std::size_t>(p.erased_per_part)
                                : static_cast<std::size_t>(p.payload_bits);
    d.uncoded_bits.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(unc));
    if (p.regime == Regime::mds) {
        const std::size_t nsym = static_cast<std::size_t>(p.alpha) * p.n;
        for (std::size_t s = 0; s < nsym; ++s)
            d.parity_symbols.push_back(
                bits_to_symbol(std::span(bits.data() + unc + s * p.m,
                                         static_cast<std::size_t>(p.m))));
    }
    return {p, d};
}

}  // namespace emd
