#include "lzjd/digest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "lzjd/errors.hpp"
#include "lzjd/lz_builder.hpp"

namespace lzjd {

namespace {

constexpr char b64_alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& in) {
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= in.size(); i += 3) {
        const std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8) | in[i + 2];
        out.push_back(b64_alphabet[(v >> 18) & 63]);
        out.push_back(b64_alphabet[(v >> 12) & 63]);
        out.push_back(b64_alphabet[(v >> 6) & 63]);
        out.push_back(b64_alphabet[v & 63]);
    }
    const std::size_t rem = in.size() - i;
    if (rem == 1) {
        const std::uint32_t v = in[i] << 16;
        out.push_back(b64_alphabet[(v >> 18) & 63]);
        out.push_back(b64_alphabet[(v >> 12) & 63]);
        out.append("==");
    } else if (rem == 2) {
        const std::uint32_t v = (in[i] << 16) | (in[i + 1] << 8);
        out.push_back(b64_alphabet[(v >> 18) & 63]);
        out.push_back(b64_alphabet[(v >> 12) & 63]);
        out.push_back(b64_alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

std::vector<std::uint8_t> base64_decode(std::string_view in) {
    if (in.size() % 4 != 0)
        throw parse_error("payload is not valid base64 (length not a multiple of 4)");
    std::vector<std::uint8_t> out;
    out.reserve(in.size() / 4 * 3);
    for (std::size_t i = 0; i < in.size(); i += 4) {
        int pad = 0;
        std::uint32_t v = 0;
        for (int j = 0; j < 4; ++j) {
            const char c = in[i + j];
            if (c == '=') {
                // padding may only appear in the last two positions of the
                // final group
                if (i + 4 != in.size() || j < 2)
                    throw parse_error("payload is not valid base64 (misplaced padding)");
                ++pad;
                v <<= 6;
                continue;
            }
            if (pad > 0)
                throw parse_error("payload is not valid base64 (data after padding)");
            const int d = b64_value(c);
            if (d < 0)
                throw parse_error("payload is not valid base64 (bad character)");
            v = (v << 6) | static_cast<std::uint32_t>(d);
        }
        out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xff));
    }
    return out;
}

std::string escape_name(const std::string& name) {
    if (name.find('\n') != std::string::npos)
        throw invalid_name_error("digest name contains a newline: cannot serialize");
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        if (c == '%')
            out += "%25";
        else if (c == ':')
            out += "%3A";
        else
            out.push_back(c);
    }
    return out;
}

std::string unescape_name(std::string_view esc) {
    std::string out;
    out.reserve(esc.size());
    for (std::size_t i = 0; i < esc.size(); ++i) {
        if (esc[i] != '%') {
            out.push_back(esc[i]);
            continue;
        }
        if (i + 2 < esc.size() && esc.compare(i, 3, "%25") == 0) {
            out.push_back('%');
        } else if (i + 2 < esc.size() && esc.compare(i, 3, "%3A") == 0) {
            out.push_back(':');
        } else {
            throw parse_error("name contains an unknown % escape");
        }
        i += 2;
    }
    return out;
}

template <typename T>
T parse_uint(std::string_view field, const char* what) {
    T value{};
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty())
        throw parse_error(std::string("bad ") + what + " field");
    return value;
}

} // namespace

std::vector<std::uint32_t> k_smallest(std::vector<std::uint32_t> values, std::size_t k) {
    if (k == 0)
        throw error("k_smallest requires k >= 1");
    const std::size_t want = std::min(k, values.size());

    // Partial selection: partition the sel smallest to the front, sort and
    // dedupe just that prefix. Every distinct value below the prefix maximum
    // lands in the prefix, so once it holds `want` distinct values they are
    // the smallest ones. Duplicates can leave the prefix short; doubling the
    // selection width and retrying stays linear overall.
    std::size_t sel = want;
    for (;;) {
        if (sel >= values.size()) {
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            if (values.size() > want)
                values.resize(want);
            return values;
        }
        std::nth_element(values.begin(),
                         values.begin() + static_cast<std::ptrdiff_t>(sel),
                         values.end());
        std::sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(sel));
        const auto last = std::unique(values.begin(),
                                      values.begin() + static_cast<std::ptrdiff_t>(sel));
        const std::size_t distinct = static_cast<std::size_t>(last - values.begin());
        if (distinct >= want) {
            values.resize(want);
            return values;
        }
        sel *= 2;
    }
}

digest digest_stream(std::istream& in, std::string name,
                     std::uint32_t k, std::uint32_t seed) {
    rolling_hash hasher(seed);
    lz_set_result set = build_lz_set(in, hasher);

    digest d;
    d.name = std::move(name);
    d.input_length = set.input_length;
    d.k_configured = k;
    d.seed = seed;
    d.values = k_smallest(std::move(set.values), k);
    return d;
}

digest digest_bytes(std::span<const std::uint8_t> bytes, std::string name,
                    std::uint32_t k, std::uint32_t seed) {
    lz_set_result set = build_lz_set(bytes, seed);

    digest d;
    d.name = std::move(name);
    d.input_length = set.input_length;
    d.k_configured = k;
    d.seed = seed;
    d.values = k_smallest(std::move(set.values), k);
    return d;
}

digest digest_file(const std::filesystem::path& path,
                   std::uint32_t k, std::uint32_t seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(path.string() + ": cannot open for reading");
    try {
        return digest_stream(in, path.string(), k, seed);
    } catch (const io_error&) {
        throw io_error(path.string() + ": read failed");
    }
}

std::string serialize(const digest& d) {
    std::vector<std::uint8_t> payload;
    payload.reserve(d.values.size() * 4);
    for (std::uint32_t v : d.values) {
        payload.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
        payload.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
        payload.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
        payload.push_back(static_cast<std::uint8_t>(v & 0xff));
    }

    std::string line = "lzjd:1:";
    line += std::to_string(d.k_configured);
    line += ':';
    line += std::to_string(d.seed);
    line += ':';
    line += std::to_string(d.input_length);
    line += ':';
    line += escape_name(d.name);
    line += ':';
    line += base64_encode(payload);
    return line;
}

digest deserialize(std::string_view line) {
    // magic:version:k:seed:length:name:payload -- name is escaped, so a
    // plain split on ':' yields exactly seven fields. The payload is taken
    // verbatim to the end of the line; a stray colon in it fails base64
    // validation instead of being dropped.
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (fields.size() < 6) {
        const std::size_t next = line.find(':', pos);
        if (next == std::string_view::npos)
            break;
        fields.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    if (fields.size() == 6)
        fields.push_back(line.substr(pos));

    if (fields.empty() || fields[0] != "lzjd") {
        if (!fields.empty() && fields[0] == "sdbf")
            throw unsupported_format_error("sdbf digests are not supported");
        throw parse_error("not a digest line (bad magic)");
    }
    if (fields.size() != 7)
        throw parse_error("digest line has too few fields");
    if (fields[1] != "1")
        throw unsupported_format_error("unsupported digest version '" +
                                       std::string(fields[1]) + "'");

    digest d;
    d.k_configured = parse_uint<std::uint32_t>(fields[2], "k");
    d.seed = parse_uint<std::uint32_t>(fields[3], "seed");
    d.input_length = parse_uint<std::uint64_t>(fields[4], "length");
    d.name = unescape_name(fields[5]);

    const std::vector<std::uint8_t> payload = base64_decode(fields[6]);
    if (payload.size() % 4 != 0)
        throw parse_error("payload length is not a multiple of 4 bytes");
    d.values.reserve(payload.size() / 4);
    for (std::size_t i = 0; i < payload.size(); i += 4) {
        const std::uint32_t v = (static_cast<std::uint32_t>(payload[i]) << 24) |
                                (static_cast<std::uint32_t>(payload[i + 1]) << 16) |
                                (static_cast<std::uint32_t>(payload[i + 2]) << 8) |
                                static_cast<std::uint32_t>(payload[i + 3]);
        d.values.push_back(v);
    }

    if (d.k_configured == 0)
        throw corrupt_digest_error("digest has k = 0");
    if (d.values.size() > d.k_configured)
        throw corrupt_digest_error("digest holds more values than its configured k");
    for (std::size_t i = 1; i < d.values.size(); ++i)
        if (d.values[i] <= d.values[i - 1])
            throw corrupt_digest_error("digest values are not strictly ascending");
    return d;
}

std::vector<digest> load_digest_db(std::istream& in, const std::string& stream_name) {
    std::vector<digest> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        try {
            out.push_back(deserialize(line));
        } catch (const error& e) {
            throw parse_error(stream_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (in.bad())
        throw io_error(stream_name + ": read failed");
    return out;
}

std::vector<digest> load_digest_db(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(path.string() + ": cannot open for reading");
    return load_digest_db(in, path.string());
}

} // namespace lzjd
