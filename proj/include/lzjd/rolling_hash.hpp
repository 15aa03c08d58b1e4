#pragma once

#include <cstdint>

namespace lzjd {

// Streaming MurmurHash3 (x86, 32-bit variant) over the bytes pushed since the
// last reset. MurmurHash3 consumes input in 4-byte blocks, so the only state
// needed between pushes is the running block mix, up to three pending tail
// bytes, and the byte count. peek() finalizes a scratch copy of that state,
// which makes querying the hash of every prefix O(1) per byte.
//
// Bytes are packed into blocks little-endian, matching the reference
// implementation on the platforms it was written for, so peek() after n
// pushes equals the canonical one-shot hash of those n bytes on any host.
class rolling_hash {
public:
    explicit rolling_hash(std::uint32_t seed = 0) noexcept
        : state_(seed), tail_(0), length_(0), seed_(seed) {}

    // Fold one byte into the running hash.
    void push(std::uint8_t b) noexcept {
        tail_ |= static_cast<std::uint32_t>(b) << (8u * (length_ & 3u));
        ++length_;
        if ((length_ & 3u) == 0) {
            state_ = mix_block(state_, tail_);
            tail_ = 0;
        }
    }

    // Hash of all bytes pushed since the last reset. Pure: does not disturb
    // the running state, so push/peek can interleave freely.
    std::uint32_t peek() const noexcept {
        std::uint32_t h = state_;
        if (length_ & 3u) {
            // Pending tail bytes get the block multiplies but no rotate-fold,
            // exactly as the one-shot algorithm treats a short final block.
            std::uint32_t k1 = tail_;
            k1 *= c1;
            k1 = rotl32(k1, 15);
            k1 *= c2;
            h ^= k1;
        }
        h ^= static_cast<std::uint32_t>(length_);
        return fmix32(h);
    }

    // Forget all pushed bytes and start a fresh hash with the same seed.
    void reset() noexcept {
        state_ = seed_;
        tail_ = 0;
        length_ = 0;
    }

    std::uint32_t seed() const noexcept { return seed_; }

    // Bytes pushed since the last reset.
    std::uint64_t bytes_pushed() const noexcept { return length_; }

    // Bytes currently waiting for a full 4-byte block (always length % 4).
    unsigned tail_size() const noexcept { return static_cast<unsigned>(length_ & 3u); }

private:
    static constexpr std::uint32_t c1 = 0xcc9e2d51u;
    static constexpr std::uint32_t c2 = 0x1b873593u;

    static std::uint32_t rotl32(std::uint32_t x, int r) noexcept {
        return (x << r) | (x >> (32 - r));
    }

    static std::uint32_t mix_block(std::uint32_t h, std::uint32_t k1) noexcept {
        k1 *= c1;
        k1 = rotl32(k1, 15);
        k1 *= c2;
        h ^= k1;
        h = rotl32(h, 13);
        h = h * 5 + 0xe6546b64u;
        return h;
    }

    static std::uint32_t fmix32(std::uint32_t h) noexcept {
        h ^= h >> 16;
        h *= 0x85ebca6bu;
        h ^= h >> 13;
        h *= 0xc2b2ae35u;
        h ^= h >> 16;
        return h;
    }

    std::uint32_t state_;   // running mix of completed 4-byte blocks
    std::uint32_t tail_;    // 0..3 pending bytes, little-endian packed
    std::uint64_t length_;  // bytes pushed since reset
    std::uint32_t seed_;
};

} // namespace lzjd
