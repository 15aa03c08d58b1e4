#include "lzjd/eval/mutations.hpp"

#include <algorithm>

namespace lzjd::eval {

double expected_score_bound(std::uint64_t edit_distance,
                            std::uint64_t len_a, std::uint64_t len_b) {
    const std::uint64_t longest = std::max(len_a, len_b);
    if (longest == 0)
        return 100.0;
    const double frac = static_cast<double>(edit_distance) / static_cast<double>(longest);
    return 100.0 * (1.0 - std::min(1.0, frac));
}

mutated fragment_end(std::span<const std::uint8_t> orig, int keep_percent) {
    const std::size_t keep = orig.size() * static_cast<std::size_t>(keep_percent) / 100;
    mutated m;
    m.bytes.assign(orig.begin(), orig.begin() + static_cast<std::ptrdiff_t>(keep));
    m.spec.kind = mutation_kind::fragment_end;
    m.spec.parameter = keep_percent;
    m.spec.analytic_edit_distance = orig.size() - keep;
    m.spec.expected_min_score =
        expected_score_bound(m.spec.analytic_edit_distance, orig.size(), keep);
    return m;
}

mutated fragment_random(std::span<const std::uint8_t> orig, int keep_percent, rng& r) {
    const std::size_t keep = orig.size() * static_cast<std::size_t>(keep_percent) / 100;
    const std::size_t removed = orig.size() - keep;
    const std::size_t front = r.below(removed + 1);
    mutated m;
    m.bytes.assign(orig.begin() + static_cast<std::ptrdiff_t>(front),
                   orig.begin() + static_cast<std::ptrdiff_t>(front + keep));
    m.spec.kind = mutation_kind::fragment_random;
    m.spec.parameter = keep_percent;
    m.spec.analytic_edit_distance = removed;
    m.spec.expected_min_score =
        expected_score_bound(m.spec.analytic_edit_distance, orig.size(), keep);
    return m;
}

mutated prepend_padding(std::span<const std::uint8_t> orig, std::size_t pad_bytes, rng& r) {
    mutated m;
    m.bytes.resize(pad_bytes + orig.size());
    r.fill(m.bytes.data(), pad_bytes);
    std::copy(orig.begin(), orig.end(), m.bytes.begin() + static_cast<std::ptrdiff_t>(pad_bytes));
    m.spec.kind = mutation_kind::alignment;
    m.spec.parameter = static_cast<double>(pad_bytes);
    m.spec.analytic_edit_distance = pad_bytes;
    m.spec.expected_min_score =
        expected_score_bound(pad_bytes, orig.size(), m.bytes.size());
    return m;
}

std::size_t noise_batch_size(std::uint64_t edits_done) {
    std::size_t batch = 1;
    std::uint64_t threshold = 200;
    while (edits_done >= threshold && batch < 1000000) {
        batch *= 10;
        threshold *= 10;
    }
    return batch;
}

void apply_noise_batch(std::vector<std::uint8_t>& data, std::size_t count, rng& r) {
    struct edit_op {
        std::size_t pos;
        std::uint8_t kind; // 0 substitute, 1 insert, 2 delete
        std::uint8_t value;
    };

    std::vector<edit_op> ops;
    ops.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        edit_op op;
        op.kind = static_cast<std::uint8_t>(r.below(3));
        if (data.empty() && op.kind != 1)
            op.kind = 1; // only insertion is possible on an empty buffer
        op.pos = op.kind == 1 ? r.below(data.size() + 1) : r.below(data.size());
        op.value = r.byte();
        ops.push_back(op);
    }
    std::stable_sort(ops.begin(), ops.end(),
                     [](const edit_op& a, const edit_op& b) { return a.pos < b.pos; });

    // One rebuild pass. Inserts at a position land before the original byte;
    // a delete wins over substitutes aimed at the same byte. Positions index
    // the pre-batch buffer, so a whole batch costs O(n + count) instead of
    // count separate memmoves.
    std::vector<std::uint8_t> out;
    out.reserve(data.size() + count);
    std::size_t oi = 0;
    for (std::size_t pos = 0; pos <= data.size(); ++pos) {
        bool drop = false;
        bool substituted = false;
        std::uint8_t sub_value = 0;
        while (oi < ops.size() && ops[oi].pos == pos) {
            switch (ops[oi].kind) {
            case 1:
                out.push_back(ops[oi].value);
                break;
            case 2:
                drop = true;
                break;
            default:
                substituted = true;
                sub_value = ops[oi].value;
                break;
            }
            ++oi;
        }
        if (pos == data.size())
            break;
        if (drop)
            continue;
        out.push_back(substituted ? sub_value : data[pos]);
    }
    data.swap(out);
}

common_block_pair make_common_block_pair(std::size_t total_size,
                                         std::size_t block_size, rng& r) {
    common_block_pair p;
    p.a.resize(total_size);
    p.b.resize(total_size);
    r.fill(p.a.data(), total_size);
    r.fill(p.b.data(), total_size);

    std::vector<std::uint8_t> block(block_size);
    r.fill(block.data(), block_size);
    p.offset_a = r.below(total_size - block_size + 1);
    p.offset_b = r.below(total_size - block_size + 1);
    std::copy(block.begin(), block.end(),
              p.a.begin() + static_cast<std::ptrdiff_t>(p.offset_a));
    std::copy(block.begin(), block.end(),
              p.b.begin() + static_cast<std::ptrdiff_t>(p.offset_b));

    p.spec.kind = mutation_kind::common_block;
    p.spec.parameter = static_cast<double>(block_size);
    p.spec.analytic_edit_distance = total_size - block_size;
    p.spec.expected_min_score =
        expected_score_bound(p.spec.analytic_edit_distance, total_size, total_size);
    return p;
}

} // namespace lzjd::eval
