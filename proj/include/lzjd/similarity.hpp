#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "lzjd/digest.hpp"

namespace lzjd {

// Number of values common to two strictly ascending lists, by a two-pointer
// walk: advance the side with the smaller head, count and advance both on a
// tie. Exact and O(|a| + |b|).
std::size_t intersection_size(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);

// Jaccard resemblance of two digests, |A n B| / |A u B|. Two empty digests
// compare as 0: no shared content means no evidence of similarity. Digests
// with differing k or seed throw incompatible_digests_error naming both.
double jaccard(const digest& a, const digest& b);

// Jaccard scaled to the conventional 0..100 similarity score, rounded half
// away from zero. 100 means identical digests, 0 means nothing in common.
int score(const digest& a, const digest& b);

// Distance form, 1 - jaccard. Symmetric, zero for identical digests, and
// satisfies the triangle inequality.
double distance(const digest& a, const digest& b);

// Fraction of a's values also present in b, |A n B| / |A|. Asymmetric; tells
// whether a is embedded in b. Undefined for an empty a (throws).
double containment(const digest& a, const digest& b);

struct adjusted_score_result {
    double value = 0;
    bool swapped = false; // inputs were given fragment-last and were swapped
};

// Fragment-aware score: scales score(a, b) by the size ratio so a fragment
// that is wholly contained in the original can still approach 100. Expects
// the fragment first (shorter input); swaps and flags if given backwards.
// Throws when the shorter input has length zero.
adjusted_score_result adjusted_fragment_score(const digest& a, const digest& b);

struct similarity_report {
    std::string name_a;
    std::string name_b;
    int score = 0;
    double jaccard = 0;
    double containment_a_in_b = 0; // 0 when a is empty
};

similarity_report compare(const digest& a, const digest& b);

} // namespace lzjd
