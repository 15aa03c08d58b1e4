#include "lzjd/eval/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lzjd/errors.hpp"
#include "lzjd/eval/rng.hpp"

namespace lzjd::eval {

namespace {

// Word shapes for the structured-text segments. The core list supplies the
// high-frequency "glue" every document has; the per-file pool supplies the
// long tail. Both are pushed through a per-file byte permutation before they
// land in the output, so two corpus files never share text substrings: each
// file writes its text in a private alphabet. Without that, every text-heavy
// pair overlaps heavily on letter n-grams and the corpus stops being a set
// of unrelated files.
constexpr const char* core_words[] = {
    "the",  "of",   "and",   "to",    "in",   "is",    "for",  "with",
    "data", "file", "value", "size",  "from", "block", "set",  "record",
    "on",   "by",   "at",    "index", "type", "name",  "time", "state",
};

std::string make_word(rng& r) {
    static constexpr char vowels[] = "aeiou";
    static constexpr char consonants[] = "bcdfghjklmnpqrstvwxz";
    const std::size_t syllables = 1 + r.below(3);
    std::string w;
    for (std::size_t s = 0; s < syllables; ++s) {
        w.push_back(consonants[r.below(sizeof consonants - 1)]);
        w.push_back(vowels[r.below(sizeof vowels - 1)]);
        if (r.below(3) == 0)
            w.push_back(consonants[r.below(sizeof consonants - 1)]);
    }
    return w;
}

using byte_alphabet = std::array<std::uint8_t, 256>;

byte_alphabet make_alphabet(rng& r) {
    byte_alphabet a;
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = static_cast<std::uint8_t>(i);
    for (std::size_t i = a.size() - 1; i > 0; --i)
        std::swap(a[i], a[r.below(i + 1)]);
    return a;
}

void append_text_segment(std::vector<std::uint8_t>& out, std::size_t len,
                         const std::vector<std::string>& pool,
                         const byte_alphabet& alpha, rng& r) {
    const std::size_t stop = out.size() + len;
    std::size_t words_on_line = 0;
    while (out.size() < stop) {
        // Word frequencies follow a Zipf curve, like real prose: a handful
        // of words carry most of the mass, so short word runs recur and the
        // vocabulary of distinct substrings grows sublinearly in length.
        const std::size_t zipf = static_cast<std::size_t>(
            std::pow(static_cast<double>(pool.size()), r.unit()));
        const std::string& w = (r.below(8) == 0)
            ? std::string(core_words[r.below(std::size(core_words))])
            : pool[std::min(zipf - 1, pool.size() - 1)];
        for (char c : w) {
            if (out.size() >= stop)
                return;
            out.push_back(alpha[static_cast<std::uint8_t>(c)]);
        }
        if (out.size() >= stop)
            return;
        ++words_on_line;
        if (words_on_line >= 9 + r.below(6)) {
            out.push_back(alpha[r.below(4) == 0 ? '.' : ',']);
            if (out.size() < stop)
                out.push_back(alpha['\n']);
            words_on_line = 0;
        } else {
            out.push_back(alpha[' ']);
        }
    }
}

void append_repeat_segment(std::vector<std::uint8_t>& out, std::size_t len, rng& r) {
    const std::size_t pat_len = 3 + r.below(62);
    std::array<std::uint8_t, 64> pat{};
    r.fill(pat.data(), pat_len);
    const std::size_t stop = out.size() + len;
    std::size_t i = 0;
    while (out.size() < stop) {
        out.push_back(pat[i]);
        i = (i + 1) % pat_len;
    }
}

// High-entropy filler in the spirit of a base64 blob or a hex dump: near
// incompressible, but spelled in a slice of the file's private alphabet
// rather than uniform bytes. Uniform bytes would be wrong here for the same
// reason the text needs its own alphabet: every large file would cover most
// of the two-byte substring space, and unrelated files would share that
// mass wholesale.
void append_noise_segment(std::vector<std::uint8_t>& out, std::size_t len,
                          const byte_alphabet& alpha, std::size_t symbols, rng& r) {
    const std::size_t stop = out.size() + len;
    while (out.size() < stop)
        out.push_back(alpha[r.below(symbols)]);
}

std::vector<std::uint8_t> make_file_bytes(std::size_t size, rng& r) {
    // Three file personalities, mirroring a desk mix of documents, packed
    // binaries, and in-between formats. Each range brackets the share of
    // high-entropy noise; a file draws one share from its range and keeps
    // it for its whole length.
    static constexpr double profiles[][2] = {
        {0.05, 0.30}, // text-heavy
        {0.30, 0.60}, // binary-heavy
        {0.15, 0.45}, // mixed
    };
    const auto& prof = profiles[r.below(3)];
    const double p_noise = prof[0] + (prof[1] - prof[0]) * r.unit();
    const byte_alphabet alpha = make_alphabet(r);
    // Narrow enough that two files' noise alphabets barely intersect, which
    // keeps the short-substring floor between unrelated files near zero.
    const std::size_t noise_symbols = 28 + r.below(17);

    std::vector<std::string> pool;
    pool.reserve(96);
    for (std::size_t i = 0; i < 96; ++i)
        pool.push_back(make_word(r));

    const auto append_fresh = [&](std::vector<std::uint8_t>& out, std::size_t seg) {
        const double u = r.unit();
        if (u < p_noise)
            append_noise_segment(out, seg, alpha, noise_symbols, r);
        else if (u < p_noise + 0.55 * (1.0 - p_noise))
            append_text_segment(out, seg, pool, alpha, r);
        else
            append_repeat_segment(out, seg, r);
    };

    // Documents carry recurring boilerplate: the same header, signature
    // block, or table skeleton shows up over and over. Each file gets a
    // small stock of blocks that it drops in with a probability that rises
    // over the file, the way boilerplate accumulates in practice; short
    // files have barely any, so the rate also scales with file size. The
    // recurrence sets how fast the pool of distinct substrings grows
    // relative to byte count, which is what prefix scores measure.
    std::vector<std::vector<std::uint8_t>> blocks(3 + r.below(6));
    for (auto& b : blocks)
        append_fresh(b, 2048 + r.below(14337));
    const double replay_scale =
        std::min(1.0, static_cast<double>(size) / (256.0 * 1024.0));

    std::vector<std::uint8_t> bytes;
    bytes.reserve(size);

    // Open with a dense, file-specific stretch standing in for a format
    // header, so even a sliver off the front carries enough distinct
    // material to point back at this file. Bigger files get bigger headers,
    // keeping a fixed-percent sliver similarly identifiable at every size.
    const std::size_t header =
        std::clamp<std::size_t>(4096 + size / 64, 8192, 32768);
    append_noise_segment(bytes, std::min(header, size), alpha, noise_symbols, r);

    while (bytes.size() < size) {
        const std::size_t base = std::size_t(1024) << r.below(5);
        const std::size_t seg = std::min(base + r.below(base), size - bytes.size());

        const double pos = static_cast<double>(bytes.size()) / static_cast<double>(size);
        const double p_replay = replay_scale * std::min(0.80, 0.85 * pos);
        if (r.unit() < p_replay) {
            const auto& b = blocks[r.below(blocks.size())];
            const std::size_t len = std::min(b.size(), size - bytes.size());
            bytes.insert(bytes.end(), b.begin(), b.begin() + len);
            continue;
        }
        append_fresh(bytes, seg);
    }
    return bytes;
}

} // namespace

corpus generate_corpus(const corpus_params& params) {
    rng base(params.seed);
    corpus c;
    c.files.reserve(params.n_files);
    for (std::size_t i = 0; i < params.n_files; ++i) {
        rng fr = base.derive(i + 1);
        const std::size_t size =
            params.min_size + fr.below(params.max_size - params.min_size + 1);

        corpus_file f;
        char name[32];
        std::snprintf(name, sizeof name, "file_%03zu.bin", i);
        f.name = name;
        f.bytes = make_file_bytes(size, fr);
        c.files.push_back(std::move(f));
    }
    return c;
}

double shannon_entropy(std::span<const std::uint8_t> bytes) {
    if (bytes.empty())
        return 0.0;
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t b : bytes)
        ++hist[b];
    double h = 0.0;
    const double n = static_cast<double>(bytes.size());
    for (std::uint64_t count : hist) {
        if (count == 0)
            continue;
        const double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h;
}

void write_corpus(const corpus& c, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv", std::ios::binary);
    if (!manifest)
        throw io_error((dir / "manifest.csv").string() + ": cannot open for writing");
    manifest << "name,size,entropy\n";
    for (const auto& f : c.files) {
        std::ofstream out(dir / f.name, std::ios::binary);
        if (!out)
            throw io_error((dir / f.name).string() + ": cannot open for writing");
        out.write(reinterpret_cast<const char*>(f.bytes.data()),
                  static_cast<std::streamsize>(f.bytes.size()));
        if (!out)
            throw io_error((dir / f.name).string() + ": write failed");
        char entropy[16];
        std::snprintf(entropy, sizeof entropy, "%.3f", shannon_entropy(f.bytes));
        manifest << f.name << ',' << f.bytes.size() << ',' << entropy << '\n';
    }
    if (!manifest)
        throw io_error((dir / "manifest.csv").string() + ": write failed");
}

corpus load_corpus(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        if (entry.path().filename() == "manifest.csv")
            continue;
        paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

    corpus c;
    c.files.reserve(paths.size());
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in)
            throw io_error(p.string() + ": cannot open for reading");
        corpus_file f;
        f.name = p.filename().string();
        f.bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        if (in.bad())
            throw io_error(p.string() + ": read failed");
        c.files.push_back(std::move(f));
    }
    return c;
}

} // namespace lzjd::eval
