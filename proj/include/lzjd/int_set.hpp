#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace lzjd {

// Insert-only set of 32-bit hash values, open addressing with double hashing.
// The stored values are already well-mixed hashes, so the value itself serves
// as its own hash: the low bits pick the home slot and the high bits (forced
// odd) pick the probe stride. Capacity stays a power of two, which makes an
// odd stride coprime with the table size and guarantees the probe sequence
// visits every slot. There is no erase; membership state never goes stale.
class hashed_int_set {
public:
    explicit hashed_int_set(std::size_t initial_capacity = 1024)
        : slots_(round_up_pow2(initial_capacity)),
          used_(slots_.size(), 0),
          count_(0) {}

    // Returns true when v was newly added, false when it was already present.
    bool insert(std::uint32_t v) {
        if ((count_ + 1) * 10 > slots_.size() * 7) // keep load factor under 0.7
            grow();
        const std::size_t mask = slots_.size() - 1;
        std::size_t idx = v & mask;
        const std::size_t step = (static_cast<std::size_t>(v >> 16) | 1u);
        while (used_[idx]) {
            if (slots_[idx] == v)
                return false;
            idx = (idx + step) & mask;
        }
        used_[idx] = 1;
        slots_[idx] = v;
        ++count_;
        return true;
    }

    bool contains(std::uint32_t v) const noexcept {
        const std::size_t mask = slots_.size() - 1;
        std::size_t idx = v & mask;
        const std::size_t step = (static_cast<std::size_t>(v >> 16) | 1u);
        while (used_[idx]) {
            if (slots_[idx] == v)
                return true;
            idx = (idx + step) & mask;
        }
        return false;
    }

    std::size_t size() const noexcept { return count_; }
    std::size_t capacity() const noexcept { return slots_.size(); }

    // All stored values, in table order (unspecified but deterministic for a
    // given insertion sequence).
    std::vector<std::uint32_t> values() const {
        std::vector<std::uint32_t> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (used_[i])
                out.push_back(slots_[i]);
        return out;
    }

private:
    static std::size_t round_up_pow2(std::size_t n) {
        std::size_t p = 1;
        while (p < n)
            p <<= 1;
        return p;
    }

    void grow() {
        std::vector<std::uint32_t> old_slots = std::move(slots_);
        std::vector<std::uint8_t> old_used = std::move(used_);
        slots_.assign(old_slots.size() * 2, 0);
        used_.assign(old_slots.size() * 2, 0);
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = 0; i < old_slots.size(); ++i) {
            if (!old_used[i])
                continue;
            const std::uint32_t v = old_slots[i];
            std::size_t idx = v & mask;
            const std::size_t step = (static_cast<std::size_t>(v >> 16) | 1u);
            while (used_[idx])
                idx = (idx + step) & mask;
            used_[idx] = 1;
            slots_[idx] = v;
        }
    }

    std::vector<std::uint32_t> slots_;
    std::vector<std::uint8_t> used_;
    std::size_t count_;
};

} // namespace lzjd
