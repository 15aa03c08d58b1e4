#include "lzjd/oracle.hpp"

#include <algorithm>
#include <vector>

#include "lzjd/errors.hpp"
#include "lzjd/lz_builder.hpp"
#include "lzjd/similarity.hpp"

namespace lzjd::oracle {

namespace {

constexpr std::size_t max_oracle_input = 1024 * 1024;

void check_size(std::span<const std::uint8_t> bytes) {
    if (bytes.size() > max_oracle_input)
        throw error("oracle input exceeds the 1 MiB cap (" +
                    std::to_string(bytes.size()) + " bytes)");
}

} // namespace

std::unordered_set<std::string> exact_lz_set(std::span<const std::uint8_t> bytes) {
    check_size(bytes);
    std::unordered_set<std::string> set;
    std::size_t start = 0;
    for (std::size_t end = 1; end <= bytes.size(); ++end) {
        std::string sub(reinterpret_cast<const char*>(bytes.data()) + start, end - start);
        if (set.insert(std::move(sub)).second)
            start = end;
    }
    return set;
}

double exact_jaccard(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    const auto sa = exact_lz_set(a);
    const auto sb = exact_lz_set(b);
    std::size_t common = 0;
    const auto& small = sa.size() <= sb.size() ? sa : sb;
    const auto& large = sa.size() <= sb.size() ? sb : sa;
    for (const auto& s : small)
        if (large.count(s))
            ++common;
    const std::size_t united = sa.size() + sb.size() - common;
    if (united == 0)
        return 0.0;
    return static_cast<double>(common) / static_cast<double>(united);
}

double full_hash_jaccard(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b,
                         std::uint32_t seed) {
    std::vector<std::uint32_t> va = build_lz_set(a, seed).values;
    std::vector<std::uint32_t> vb = build_lz_set(b, seed).values;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    const std::size_t common = intersection_size(va, vb);
    const std::size_t united = va.size() + vb.size() - common;
    if (united == 0)
        return 0.0;
    return static_cast<double>(common) / static_cast<double>(united);
}

} // namespace lzjd::oracle
