#pragma once

#include <cstdint>
#include <vector>

namespace lzjd::eval {

// Deterministic 64-bit generator (splitmix64). The standard <random> engines
// are portable but the distributions are not; harness results must reproduce
// bit-for-bit from a seed on any platform, so bounded draws are done by hand
// here. Statistical quality is far beyond what corpus synthesis needs.
class rng {
public:
    explicit rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is ~n/2^64, irrelevant at our ranges.
    std::uint64_t below(std::uint64_t n) noexcept {
        return n == 0 ? 0 : next_u64() % n;
    }

    std::uint8_t byte() noexcept {
        return static_cast<std::uint8_t>(next_u64() & 0xff);
    }

    // Uniform in [0, 1).
    double unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    void fill(std::uint8_t* out, std::size_t n) noexcept {
        std::size_t i = 0;
        for (; i + 8 <= n; i += 8) {
            const std::uint64_t v = next_u64();
            for (int j = 0; j < 8; ++j)
                out[i + static_cast<std::size_t>(j)] =
                    static_cast<std::uint8_t>(v >> (8 * j));
        }
        for (; i < n; ++i)
            out[i] = byte();
    }

    // Independent child stream for a labelled subtask. Mixing the label
    // through the output function decorrelates streams, so per-file work can
    // run on any thread without changing results.
    rng derive(std::uint64_t label) const noexcept {
        rng mix(state_ ^ (label * 0x9E3779B97F4A7C15ull + 0x1234567890ABCDEFull));
        return rng(mix.next_u64());
    }

private:
    std::uint64_t state_;
};

} // namespace lzjd::eval
