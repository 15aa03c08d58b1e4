#include "lzjd/lz_builder.hpp"

#include <cstddef>

#include "lzjd/errors.hpp"
#include "lzjd/int_set.hpp"

namespace lzjd {

namespace {

inline void consume_chunk(const std::uint8_t* data, std::size_t n,
                          rolling_hash& hasher, hashed_int_set& set) {
    for (std::size_t i = 0; i < n; ++i) {
        hasher.push(data[i]);
        if (set.insert(hasher.peek()))
            hasher.reset();
    }
}

} // namespace

lz_set_result build_lz_set(std::istream& in, rolling_hash& hasher) {
    hasher.reset();
    hashed_int_set set;
    std::uint64_t total = 0;
    char buf[64 * 1024];

    while (in.good()) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        if (in.bad())
            throw io_error("stream read failed after " + std::to_string(total) + " bytes");
        if (got <= 0)
            break;
        consume_chunk(reinterpret_cast<const std::uint8_t*>(buf),
                      static_cast<std::size_t>(got), hasher, set);
        total += static_cast<std::uint64_t>(got);
    }
    if (in.bad())
        throw io_error("stream read failed after " + std::to_string(total) + " bytes");

    lz_set_result r;
    r.values = set.values();
    r.substring_count = r.values.size();
    r.input_length = total;
    return r;
}

lz_set_result build_lz_set(std::span<const std::uint8_t> bytes, std::uint32_t seed) {
    rolling_hash hasher(seed);
    hashed_int_set set;
    consume_chunk(bytes.data(), bytes.size(), hasher, set);

    lz_set_result r;
    r.values = set.values();
    r.substring_count = r.values.size();
    r.input_length = bytes.size();
    return r;
}

} // namespace lzjd
