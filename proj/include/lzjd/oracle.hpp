#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>

namespace lzjd::oracle {

// Reference implementations that trade speed and memory for being obviously
// correct. They back the test suite and the evaluation harness calibration;
// nothing on the production digest path depends on them.

// The Lempel-Ziv substring set with real byte strings instead of hashes.
// Same parse as the streaming builder, minus hashing, so any divergence
// between the two is either a builder bug or a 32-bit hash collision.
// Inputs above 1 MiB throw: the stored substrings make this quadratic-ish
// in memory for degenerate data, and the oracle is only meant for test
// sized inputs.
std::unordered_set<std::string> exact_lz_set(std::span<const std::uint8_t> bytes);

// Jaccard resemblance over the exact substring sets. Empty vs empty is 0.
double exact_jaccard(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// Jaccard over the complete hashed substring sets, before any truncation to
// the k smallest. Differences against exact_jaccard isolate hash-collision
// error; differences against the digest-level jaccard isolate truncation
// error.
double full_hash_jaccard(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b,
                         std::uint32_t seed = 0);

} // namespace lzjd::oracle
