#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lzjd/eval/corpus.hpp"

namespace lzjd::eval {

struct harness_config {
    std::uint32_t k = 1024;
    std::uint32_t hash_seed = 0;
    std::uint64_t rng_seed = 1;
    unsigned threads = 0; // 0 = one worker per hardware thread
};

// One aggregated line of a resilience table. `parameter` is whatever the
// test sweeps (fragment %, padding, score band); avg_score averages the
// scores of the trials counted in `matches`; expected_min_score is the
// analytic ceiling derived from the known edit distance of the mutation.
struct report_row {
    double parameter = 0;
    std::size_t matches = 0;
    double match_rate = 0; // percent of trials
    double avg_score = 0;
    double expected_min_score = 0;
};

// One individual trial of a rank test. Rows average these; the raw points
// stay around so callers can hold every single trial against its analytic
// ceiling instead of only the row means.
struct trial_point {
    double parameter = 0;
    int score = 0;
    double expected_min_score = 0;
    bool matched = false;
};

struct test_report {
    std::string title;
    std::size_t trials_per_row = 0;
    std::vector<report_row> rows;
    std::vector<trial_point> points; // filled by the rank-based tests
};

std::vector<int> default_fragment_sizes();    // 95..5 by 5, then 4,3,2,1
std::vector<int> default_alignment_percents(); // 10, 50, 100, 300, 500
std::vector<int> default_alignment_kbs();      // 4..64 by 4
std::vector<int> default_score_bands();        // 95..5 by 5

// Cuts every corpus file down to each percentage and checks that the
// fragment's digest still ranks its own source file strictly first among
// all corpus digests (ties count as misses). random_cut trims both ends
// instead of keeping the prefix.
test_report fragment_test(const corpus& c, const std::vector<int>& keep_sizes,
                          bool random_cut, const harness_config& cfg);

// Prepends random filler sized as a percentage of the file (or a fixed KB
// amount) and ranks the padded file against the corpus.
test_report alignment_percent_test(const corpus& c, const std::vector<int>& percents,
                                   const harness_config& cfg);
test_report alignment_fixed_test(const corpus& c, const std::vector<int>& pad_kb,
                                 const harness_config& cfg);

struct noise_outcome {
    std::string name;
    std::uint64_t size = 0;
    std::uint64_t edits_to_below_25 = 0; // edit count at first score under 25
    bool crossed_below_25 = false;       // false: score stayed >= 25 to the 80% stop
};

struct noise_report {
    test_report table;
    std::vector<noise_outcome> outcomes;
};

// Degrades a subset of files with random edits on the widening batch
// schedule, comparing against the unmodified original after every batch.
// Each score band records the edit count at which the score was first
// observed inside it; a band the score jumps over is a miss. The sweep
// stops once 80% of the file's bytes have been edited. subset_size 0 means
// min(20, corpus size); files are picked evenly across the corpus.
noise_report noise_test(const corpus& c, std::size_t subset_size,
                        const harness_config& cfg);

// Pairs of random-filler files of total_size sharing one identical block.
// The block starts at half the file and halves down to 16 KB; each band
// records the smallest block at which the pair still scored at or above it.
test_report scb_test(std::size_t total_size, std::size_t trials,
                     const harness_config& cfg);

// How often the measured scores respect the analytic ceiling. One point per
// populated report row: (avg_score, expected_min_score).
struct bound_summary {
    std::size_t points = 0;
    std::size_t within = 0;     // avg_score <= expected_min_score
    std::size_t within_tol = 0; // avg_score <= expected_min_score + tolerance
    double tolerance = 2.0;
};

bound_summary lower_bound_report(const std::vector<test_report>& reports,
                                 double tolerance = 2.0);

// CSV with columns: parameter,matches,match_rate,avg_score,expected_min_score
// preceded by a '# title' comment line.
void write_csv(std::ostream& out, const test_report& report);
void write_summary(std::ostream& out, const bound_summary& summary);

} // namespace lzjd::eval
