#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace lzjd {

constexpr std::uint32_t default_digest_k = 1024;

// A similarity digest: the k numerically smallest distinct substring hashes
// of the input, kept sorted ascending. Small inputs produce fewer than k
// values; k_configured still records the comparison parameter.
struct digest {
    std::string name;
    std::uint64_t input_length = 0;
    std::uint32_t k_configured = default_digest_k;
    std::uint32_t seed = 0;
    std::vector<std::uint32_t> values; // strictly ascending

    friend bool operator==(const digest&, const digest&) = default;
};

// The min(k, distinct) smallest distinct values, strictly ascending.
// Selection is O(n) expected via partial selection; only the kept prefix is
// sorted. Duplicate inputs are coalesced.
std::vector<std::uint32_t> k_smallest(std::vector<std::uint32_t> values, std::size_t k);

// Digest a stream in one pass. The name is recorded verbatim in the digest.
digest digest_stream(std::istream& in, std::string name,
                     std::uint32_t k = default_digest_k, std::uint32_t seed = 0);

// Digest an in-memory buffer.
digest digest_bytes(std::span<const std::uint8_t> bytes, std::string name,
                    std::uint32_t k = default_digest_k, std::uint32_t seed = 0);

// Open and digest a file; throws io_error with the path in the message.
digest digest_file(const std::filesystem::path& path,
                   std::uint32_t k = default_digest_k, std::uint32_t seed = 0);

// One-line text form:
//   lzjd:1:<k>:<seed>:<input_length>:<escaped name>:<base64 payload>
// The payload is each value as four big-endian bytes, ascending, standard
// base64 with padding. Names escape '%' as %25 and ':' as %3A; a name with
// an embedded newline cannot be serialized and throws invalid_name_error.
std::string serialize(const digest& d);

// Inverse of serialize. Throws parse_error on malformed lines,
// unsupported_format_error on foreign digests (e.g. sdbf) or unknown
// versions, corrupt_digest_error when the payload is not strictly ascending
// or exceeds k.
digest deserialize(std::string_view line);

// Reads a digest database: one digest per line, '#' comment lines and blank
// lines ignored, order preserved. Errors carry the 1-based line number and
// the stream name.
std::vector<digest> load_digest_db(std::istream& in, const std::string& stream_name);
std::vector<digest> load_digest_db(const std::filesystem::path& path);

} // namespace lzjd
