#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzjd/eval/rng.hpp"

namespace lzjd::eval {

enum class mutation_kind {
    fragment_end,    // keep a leading fraction of the file
    fragment_random, // keep a middle fraction, trim both ends
    alignment,       // prepend random bytes
    noise,           // scattered insert/delete/substitute edits
    common_block,    // two different files sharing one identical block
};

// Every mutation knows its exact edit distance by construction: bytes
// removed for fragments, bytes prepended for alignment, operations applied
// for noise, non-shared bytes for a common block. From that follows the
// analytic score ceiling 100 * (1 - distance / max(len_a, len_b)), which the
// reports carry next to the measured scores.
struct mutation_spec {
    mutation_kind kind{};
    double parameter = 0;
    std::uint64_t analytic_edit_distance = 0;
    double expected_min_score = 0;
};

double expected_score_bound(std::uint64_t edit_distance,
                            std::uint64_t len_a, std::uint64_t len_b);

struct mutated {
    std::vector<std::uint8_t> bytes;
    mutation_spec spec;
};

// First keep_percent% of the file.
mutated fragment_end(std::span<const std::uint8_t> orig, int keep_percent);

// keep_percent% of the file from a random interior position; the cut amount
// is split between front and back by a uniform draw.
mutated fragment_random(std::span<const std::uint8_t> orig, int keep_percent, rng& r);

// Original content shifted right by pad_bytes of random filler.
mutated prepend_padding(std::span<const std::uint8_t> orig, std::size_t pad_bytes, rng& r);

// Edit batch width as a function of edits already applied: single bytes for
// the first 200 edits, tens until 2000, hundreds until 20000, and so on.
std::size_t noise_batch_size(std::uint64_t edits_done);

// Applies `count` random single-byte edits (insert, delete, or substitute,
// equally likely, at uniform positions). Positions refer to the buffer as it
// was when the batch started; the batch is materialized in one rebuild pass.
void apply_noise_batch(std::vector<std::uint8_t>& data, std::size_t count, rng& r);

// Two total_size buffers of unrelated random filler sharing one identical
// block of block_size bytes at independent random offsets.
struct common_block_pair {
    std::vector<std::uint8_t> a;
    std::vector<std::uint8_t> b;
    std::size_t offset_a = 0;
    std::size_t offset_b = 0;
    mutation_spec spec;
};
common_block_pair make_common_block_pair(std::size_t total_size,
                                         std::size_t block_size, rng& r);

} // namespace lzjd::eval
