#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <vector>

#include "lzjd/rolling_hash.hpp"

namespace lzjd {

struct lz_set_result {
    std::vector<std::uint32_t> values; // distinct substring hashes, unordered
    std::size_t substring_count = 0;   // == values.size()
    std::uint64_t input_length = 0;    // bytes consumed
};

// Builds the set of hashed Lempel-Ziv substrings of the input in one pass.
//
// The parse keeps a current substring that grows byte by byte. After each
// byte, the hash of the substring so far is probed against the set: a new
// hash is inserted and the substring restarts at the next byte, a known hash
// keeps extending. A trailing substring whose hash is already present is
// dropped when the input ends. The hasher is reset at every substring
// boundary, so each stored value is the hash of exactly one contiguous
// substring of the input.
//
// Reads the stream once, front to back, in fixed-size chunks; never seeks.
// A stream-level failure throws io_error. Bytes already consumed before the
// failure are not reported.
lz_set_result build_lz_set(std::istream& in, rolling_hash& hasher);

// Same parse over an in-memory buffer.
lz_set_result build_lz_set(std::span<const std::uint8_t> bytes, std::uint32_t seed = 0);

} // namespace lzjd
