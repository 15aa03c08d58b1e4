#include "lzjd/similarity.hpp"

#include <algorithm>

#include "lzjd/errors.hpp"

namespace lzjd {

namespace {

void require_compatible(const digest& a, const digest& b) {
    if (a.k_configured != b.k_configured || a.seed != b.seed)
        throw incompatible_digests_error(
            "digests are not comparable: '" + a.name + "' (k=" +
            std::to_string(a.k_configured) + ", seed=" + std::to_string(a.seed) +
            ") vs '" + b.name + "' (k=" + std::to_string(b.k_configured) +
            ", seed=" + std::to_string(b.seed) + ")");
}

} // namespace

std::size_t intersection_size(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
    // Branchless two-pointer merge. On unrelated digests the three-way
    // comparison is a coin flip that the branch predictor keeps losing, so
    // the pointer steps are computed arithmetically instead of branched on.
    std::size_t i = 0, j = 0, common = 0;
    const std::size_t na = a.size(), nb = b.size();
    while (i < na && j < nb) {
        const std::uint32_t x = a[i], y = b[j];
        common += x == y;
        i += x <= y;
        j += y <= x;
    }
    return common;
}

double jaccard(const digest& a, const digest& b) {
    require_compatible(a, b);
    const std::size_t common = intersection_size(a.values, b.values);
    const std::size_t united = a.values.size() + b.values.size() - common;
    if (united == 0)
        return 0.0;
    return static_cast<double>(common) / static_cast<double>(united);
}

int score(const digest& a, const digest& b) {
    require_compatible(a, b);
    const std::uint64_t common = intersection_size(a.values, b.values);
    const std::uint64_t united = a.values.size() + b.values.size() - common;
    if (united == 0)
        return 0;
    // round(100 * common / united) in exact integer arithmetic, halves up
    return static_cast<int>((200 * common + united) / (2 * united));
}

double distance(const digest& a, const digest& b) {
    return 1.0 - jaccard(a, b);
}

double containment(const digest& a, const digest& b) {
    require_compatible(a, b);
    if (a.values.empty())
        throw error("containment of an empty digest '" + a.name + "' is undefined");
    const std::size_t common = intersection_size(a.values, b.values);
    return static_cast<double>(common) / static_cast<double>(a.values.size());
}

adjusted_score_result adjusted_fragment_score(const digest& a, const digest& b) {
    const digest* frag = &a;
    const digest* whole = &b;
    adjusted_score_result r;
    if (frag->input_length > whole->input_length) {
        std::swap(frag, whole);
        r.swapped = true;
    }
    if (frag->input_length == 0)
        throw error("adjusted fragment score is undefined for a zero-length input");

    const double ratio = static_cast<double>(whole->input_length) /
                         static_cast<double>(frag->input_length);
    r.value = std::min(100.0, score(*frag, *whole) * ratio);
    return r;
}

similarity_report compare(const digest& a, const digest& b) {
    require_compatible(a, b);
    similarity_report rep;
    rep.name_a = a.name;
    rep.name_b = b.name;
    rep.score = score(a, b);
    rep.jaccard = jaccard(a, b);
    rep.containment_a_in_b =
        a.values.empty() ? 0.0 : containment(a, b);
    return rep;
}

} // namespace lzjd
