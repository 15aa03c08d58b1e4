#pragma once

#include <stdexcept>
#include <string>

namespace lzjd {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File or stream level read/write failure. Message carries the input name.
struct io_error : error {
    using error::error;
};

// Malformed digest line or database (bad field count, bad base64, bad number).
struct parse_error : error {
    using error::error;
};

// Recognized but unsupported input, e.g. an sdbf digest or a newer line version.
struct unsupported_format_error : error {
    using error::error;
};

// Structurally valid digest whose payload violates an invariant (values not
// strictly ascending, more values than the configured k).
struct corrupt_digest_error : error {
    using error::error;
};

// Digest name that cannot be serialized (embedded newline).
struct invalid_name_error : error {
    using error::error;
};

// Two digests whose k or seed differ; they cannot be compared.
struct incompatible_digests_error : error {
    using error::error;
};

} // namespace lzjd
