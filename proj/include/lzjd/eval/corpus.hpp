#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lzjd::eval {

struct corpus_file {
    std::string name;
    std::vector<std::uint8_t> bytes;
};

struct corpus {
    std::vector<corpus_file> files;
};

struct corpus_params {
    std::size_t n_files = 50;
    std::size_t min_size = 64 * 1024;
    std::size_t max_size = 2 * 1024 * 1024;
    std::uint64_t seed = 0;
};

// Synthesizes a corpus of mixed-entropy files: runs of structured text,
// high-entropy noise, and repetitive binary patterns, interleaved in
// random-length segments, plus replays of earlier ranges that get more
// frequent toward the tail the way real documents accumulate boilerplate.
// Text and noise are spelled in a per-file byte alphabet so distinct files
// stay genuinely unrelated. Fully deterministic for a given params.seed.
corpus generate_corpus(const corpus_params& params);

// Shannon entropy of a byte buffer in bits per byte (0 to 8).
double shannon_entropy(std::span<const std::uint8_t> bytes);

// Writes each file plus a manifest.csv (name,size,entropy) into dir,
// creating it if needed.
void write_corpus(const corpus& c, const std::filesystem::path& dir);

// Loads every regular file in dir (non-recursive, lexicographic order,
// manifest.csv excluded) as a corpus.
corpus load_corpus(const std::filesystem::path& dir);

} // namespace lzjd::eval
