#pragma once

#include <cstddef>
#include <cstdint>

// One-shot MurmurHash3 x86_32, kept deliberately separate from the streaming
// hasher under test. Byte order is handled with explicit shifts so the result
// is the same on any host.
namespace testref {

inline std::uint32_t rotl32(std::uint32_t x, int r) {
    return (x << r) | (x >> (32 - r));
}

inline std::uint32_t murmur3_x86_32(const void* key, std::size_t len, std::uint32_t seed) {
    const auto* data = static_cast<const std::uint8_t*>(key);
    const std::size_t nblocks = len / 4;
    const std::uint32_t c1 = 0xcc9e2d51u;
    const std::uint32_t c2 = 0x1b873593u;
    std::uint32_t h1 = seed;

    for (std::size_t i = 0; i < nblocks; ++i) {
        std::uint32_t k1 = static_cast<std::uint32_t>(data[i * 4]) |
                           (static_cast<std::uint32_t>(data[i * 4 + 1]) << 8) |
                           (static_cast<std::uint32_t>(data[i * 4 + 2]) << 16) |
                           (static_cast<std::uint32_t>(data[i * 4 + 3]) << 24);
        k1 *= c1;
        k1 = rotl32(k1, 15);
        k1 *= c2;
        h1 ^= k1;
        h1 = rotl32(h1, 13);
        h1 = h1 * 5 + 0xe6546b64u;
    }

    const std::uint8_t* tail = data + nblocks * 4;
    std::uint32_t k1 = 0;
    switch (len & 3) {
    case 3: k1 ^= static_cast<std::uint32_t>(tail[2]) << 16; [[fallthrough]];
    case 2: k1 ^= static_cast<std::uint32_t>(tail[1]) << 8; [[fallthrough]];
    case 1:
        k1 ^= static_cast<std::uint32_t>(tail[0]);
        k1 *= c1;
        k1 = rotl32(k1, 15);
        k1 *= c2;
        h1 ^= k1;
    }

    h1 ^= static_cast<std::uint32_t>(len);
    h1 ^= h1 >> 16;
    h1 *= 0x85ebca6bu;
    h1 ^= h1 >> 13;
    h1 *= 0xc2b2ae35u;
    h1 ^= h1 >> 16;
    return h1;
}

inline std::uint32_t murmur3_str(const char* s, std::size_t len, std::uint32_t seed = 0) {
    return murmur3_x86_32(s, len, seed);
}

} // namespace testref
