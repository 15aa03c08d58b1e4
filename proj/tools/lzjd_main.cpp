// lzjd: similarity digest tool. Hashes files into compact digests, compares
// digests, and scores how alike two inputs are on a 0..100 scale. The flag
// surface follows sdhash conventions so it can slot into existing tooling.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lzjd/digest.hpp"
#include "lzjd/errors.hpp"
#include "lzjd/eval/parallel.hpp"
#include "lzjd/similarity.hpp"

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

struct options {
    bool recursive = false;
    bool gen_compare = false;
    bool compare_dbs = false;
    int threshold = 1;
    unsigned workers = 0;
    std::string output;
    std::uint32_t k = lzjd::default_digest_k;
    std::uint32_t seed = 0;
    bool stats = false;
    std::vector<std::string> paths;
};

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Expands positional arguments into the list of inputs to hash. Directories
// require -r and are walked without following symlinks; regular files are
// collected in lexicographic path order so output is reproducible. Special
// files are skipped with a note. Returns false when anything failed.
bool expand_inputs(const options& opt, std::vector<std::string>& inputs) {
    bool ok = true;
    for (const std::string& p : opt.paths) {
        if (p == "-") {
            inputs.push_back(p);
            continue;
        }
        std::error_code ec;
        const fs::file_status st = fs::symlink_status(p, ec);
        if (ec) {
            std::cerr << "lzjd: " << p << ": " << ec.message() << "\n";
            ok = false;
            continue;
        }
        if (fs::is_directory(st)) {
            if (!opt.recursive) {
                std::cerr << "lzjd: " << p << ": is a directory (use -r)\n";
                ok = false;
                continue;
            }
            std::vector<std::string> found;
            const auto iter_opts = fs::directory_options::skip_permission_denied;
            for (auto it = fs::recursive_directory_iterator(p, iter_opts, ec);
                 !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
                if (it->is_symlink())
                    continue; // never follow links while walking
                if (it->is_directory())
                    continue;
                if (!it->is_regular_file()) {
                    std::cerr << "lzjd: skipping special file " << it->path().string() << "\n";
                    continue;
                }
                found.push_back(it->path().string());
            }
            if (ec) {
                std::cerr << "lzjd: " << p << ": " << ec.message() << "\n";
                ok = false;
                continue;
            }
            std::sort(found.begin(), found.end());
            inputs.insert(inputs.end(), found.begin(), found.end());
        } else if (fs::exists(st)) {
            inputs.push_back(p);
        } else {
            std::cerr << "lzjd: " << p << ": no such file or directory\n";
            ok = false;
        }
    }
    return ok;
}

// Hashes all inputs with a worker pool. Results land in input order no
// matter how many workers run; failures leave a message and an empty slot.
bool hash_inputs(const options& opt, const std::vector<std::string>& inputs,
                 std::vector<lzjd::digest>& digests, std::vector<std::uint8_t>& valid) {
    digests.assign(inputs.size(), {});
    valid.assign(inputs.size(), false);
    std::vector<std::string> errors(inputs.size());

    lzjd::eval::parallel_for(inputs.size(), opt.workers, [&](std::size_t i) {
        try {
            if (inputs[i] == "-")
                digests[i] = lzjd::digest_stream(std::cin, "-", opt.k, opt.seed);
            else
                digests[i] = lzjd::digest_file(inputs[i], opt.k, opt.seed);
            valid[i] = true;
        } catch (const lzjd::error& e) {
            errors[i] = e.what();
        }
    });

    bool ok = true;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!valid[i]) {
            std::cerr << "lzjd: " << errors[i] << "\n";
            ok = false;
        }
    }
    return ok;
}

struct match_line {
    const std::string* name_a;
    const std::string* name_b;
    int score;
};

void print_matches(std::ostream& out, std::vector<match_line>& matches) {
    std::sort(matches.begin(), matches.end(),
              [](const match_line& x, const match_line& y) {
                  if (*x.name_a != *y.name_a)
                      return *x.name_a < *y.name_a;
                  return *x.name_b < *y.name_b;
              });
    for (const match_line& m : matches)
        out << *m.name_a << '|' << *m.name_b << '|' << m.score << '\n';
}

// Scores pairs in parallel and emits lines at or above the threshold.
// pairs[i] indexes into digests.
void compare_pairs(const options& opt, const std::vector<lzjd::digest>& digests,
                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                   std::ostream& out) {
    const auto start = clock_type::now();
    std::vector<int> scores(pairs.size());
    lzjd::eval::parallel_for(pairs.size(), opt.workers, [&](std::size_t i) {
        scores[i] = lzjd::score(digests[pairs[i].first], digests[pairs[i].second]);
    });
    const double compare_s = seconds_since(start);

    std::vector<match_line> matches;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (scores[i] < opt.threshold)
            continue;
        matches.push_back({&digests[pairs[i].first].name,
                           &digests[pairs[i].second].name, scores[i]});
    }
    print_matches(out, matches);

    if (opt.stats) {
        std::cerr << "stats: compared " << pairs.size() << " pairs in "
                  << compare_s << " s ("
                  << (compare_s > 0 ? static_cast<double>(pairs.size()) / compare_s : 0.0)
                  << " cmp/s)\n";
    }
}

int run_hash_or_gen(const options& opt, std::ostream& out) {
    std::vector<std::string> inputs;
    bool ok = expand_inputs(opt, inputs);

    const auto start = clock_type::now();
    std::vector<lzjd::digest> digests;
    std::vector<std::uint8_t> valid;
    ok = hash_inputs(opt, inputs, digests, valid) && ok;
    const double hash_s = seconds_since(start);

    if (opt.stats) {
        std::uint64_t bytes = 0;
        for (std::size_t i = 0; i < digests.size(); ++i)
            if (valid[i])
                bytes += digests[i].input_length;
        std::cerr << "stats: hashed " << inputs.size() << " inputs ("
                  << bytes << " bytes) in " << hash_s << " s ("
                  << (hash_s > 0 ? static_cast<double>(bytes) / (1e6 * hash_s) : 0.0)
                  << " MB/s)\n";
    }

    if (!opt.gen_compare) {
        for (std::size_t i = 0; i < digests.size(); ++i)
            if (valid[i])
                out << lzjd::serialize(digests[i]) << '\n';
        return ok ? 0 : 1;
    }

    // gen-compare: every unordered pair of successfully hashed inputs
    std::vector<std::uint32_t> live;
    for (std::size_t i = 0; i < digests.size(); ++i)
        if (valid[i])
            live.push_back(static_cast<std::uint32_t>(i));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(live.size() * (live.size() ? live.size() - 1 : 0) / 2);
    for (std::size_t i = 0; i < live.size(); ++i)
        for (std::size_t j = i + 1; j < live.size(); ++j)
            pairs.emplace_back(live[i], live[j]);

    compare_pairs(opt, digests, pairs, out);
    return ok ? 0 : 1;
}

int run_compare_dbs(const options& opt, std::ostream& out) {
    std::vector<lzjd::digest> db1, db2;
    try {
        db1 = lzjd::load_digest_db(opt.paths[0]);
        if (opt.paths.size() == 2)
            db2 = lzjd::load_digest_db(opt.paths[1]);
    } catch (const lzjd::error& e) {
        std::cerr << "lzjd: " << e.what() << "\n";
        return 1;
    }

    // Every digest that takes part in a comparison must agree on k and seed;
    // mixed databases are a data error, not a usage error.
    const lzjd::digest* first = nullptr;
    for (const auto* db : {&db1, &db2}) {
        for (const lzjd::digest& d : *db) {
            if (!first) {
                first = &d;
            } else if (d.k_configured != first->k_configured || d.seed != first->seed) {
                std::cerr << "lzjd: incompatible digests: '" << first->name
                          << "' (k=" << first->k_configured << ", seed=" << first->seed
                          << ") vs '" << d.name << "' (k=" << d.k_configured
                          << ", seed=" << d.seed << ")\n";
                return 1;
            }
        }
    }

    std::vector<lzjd::digest> digests;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    if (opt.paths.size() == 1) {
        digests = std::move(db1);
        for (std::size_t i = 0; i < digests.size(); ++i)
            for (std::size_t j = i + 1; j < digests.size(); ++j)
                pairs.emplace_back(static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(j));
    } else {
        digests = std::move(db1);
        const std::size_t split = digests.size();
        digests.insert(digests.end(), std::make_move_iterator(db2.begin()),
                       std::make_move_iterator(db2.end()));
        for (std::size_t i = 0; i < split; ++i)
            for (std::size_t j = split; j < digests.size(); ++j)
                pairs.emplace_back(static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(j));
    }

    compare_pairs(opt, digests, pairs, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    options opt;

    CLI::App app{"lzjd: Lempel-Ziv Jaccard distance similarity digests"};
    app.add_flag("-r", opt.recursive, "recurse into directories");
    app.add_flag("-g", opt.gen_compare, "hash inputs, then compare all pairs");
    app.add_flag("-c", opt.compare_dbs, "compare digests from one or two digest files");
    app.add_option("-t", opt.threshold, "only report scores at or above this")
        ->capture_default_str();
    app.add_option("-p", opt.workers, "worker threads (default: all cores)");
    app.add_option("-o", opt.output, "write results to a file instead of stdout");
    app.add_option("--k", opt.k, "digest size: number of hash values kept")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "hash seed recorded in digests")
        ->capture_default_str();
    app.add_flag("--stats", opt.stats, "print timing statistics to stderr");
    app.add_option("paths", opt.paths, "files, directories, digest files, or - for stdin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opt.compare_dbs && opt.gen_compare) {
        std::cerr << "lzjd: -c and -g are mutually exclusive\n";
        return 2;
    }
    if (opt.compare_dbs && (opt.paths.empty() || opt.paths.size() > 2)) {
        std::cerr << "lzjd: -c takes one or two digest files\n";
        return 2;
    }
    if (opt.paths.empty()) {
        std::cerr << "lzjd: no inputs (try --help)\n";
        return 2;
    }
    if (opt.k == 0) {
        std::cerr << "lzjd: --k must be at least 1\n";
        return 2;
    }

    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (!opt.output.empty()) {
        out_file.open(opt.output, std::ios::binary);
        if (!out_file) {
            std::cerr << "lzjd: " << opt.output << ": cannot open for writing\n";
            return 1;
        }
        out = &out_file;
    }

    int rc;
    try {
        rc = opt.compare_dbs ? run_compare_dbs(opt, *out)
                             : run_hash_or_gen(opt, *out);
    } catch (const lzjd::error& e) {
        std::cerr << "lzjd: " << e.what() << "\n";
        return 1;
    }

    out->flush();
    if (out_file.is_open() && !out_file) {
        std::cerr << "lzjd: " << opt.output << ": write failed\n";
        return 1;
    }
    return rc;
}
