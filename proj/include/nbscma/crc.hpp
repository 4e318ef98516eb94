// Bitwise CRC over bit vectors, MSB-first, zero initial register.
// Supported generators: CRC-16 (0x1021) and CRC-24 (0x1864CFB).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nbscma {

using BitVec = std::vector<std::uint8_t>;

struct CrcSpec {
    int len = 0;            // number of parity bits
    std::uint32_t poly = 0; // generator without the leading x^len term

    static CrcSpec for_len(int len) {
        switch (len) {
            case 16: return {16, 0x1021};
            case 24: return {24, 0x864CFB};
            default: throw std::invalid_argument("crc_len: must be 16 or 24");
        }
    }
};

// Remainder of bits * x^len mod generator; appending it makes the whole
// word divide the generator.
inline std::uint32_t crc_remainder(const BitVec& bits, const CrcSpec& spec) {
    const std::uint32_t topbit = 1u << (spec.len - 1);
    const std::uint32_t mask = (spec.len == 32) ? 0xffffffffu : ((1u << spec.len) - 1);
    std::uint32_t reg = 0;
    for (std::uint8_t b : bits) {
        const std::uint32_t fb = ((reg & topbit) ? 1u : 0u) ^ (b & 1u);
        reg = (reg << 1) & mask;
        if (fb) reg ^= spec.poly;
    }
    return reg;
}

// info bits -> info bits followed by parity bits (MSB of the register first)
inline BitVec crc_encode(const BitVec& info, const CrcSpec& spec) {
    const std::uint32_t rem = crc_remainder(info, spec);
    BitVec out = info;
    out.reserve(info.size() + static_cast<std::size_t>(spec.len));
    for (int i = spec.len - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>((rem >> i) & 1));
    return out;
}

inline bool crc_check(const BitVec& word, const CrcSpec& spec) {
    return crc_remainder(word, spec) == 0;
}

} // namespace nbscma
