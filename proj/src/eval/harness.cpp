#include "lzjd/eval/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lzjd/digest.hpp"
#include "lzjd/eval/mutations.hpp"
#include "lzjd/eval/parallel.hpp"
#include "lzjd/eval/rng.hpp"
#include "lzjd/similarity.hpp"

namespace lzjd::eval {

namespace {

// rng stream labels, one tag per test so reruns of a single test reproduce
// the exact trials of a full run
enum : std::uint64_t {
    tag_fragment_end = 1,
    tag_fragment_random,
    tag_alignment_percent,
    tag_alignment_fixed,
    tag_noise,
    tag_scb,
};

std::uint64_t task_label(std::uint64_t tag, std::uint64_t row, std::uint64_t item) {
    return (tag << 40) ^ (row << 20) ^ item;
}

std::vector<digest> digest_corpus(const corpus& c, const harness_config& cfg) {
    std::vector<digest> db(c.files.size());
    parallel_for(c.files.size(), cfg.threads, [&](std::size_t i) {
        db[i] = digest_bytes(c.files[i].bytes, c.files[i].name, cfg.k, cfg.hash_seed);
    });
    return db;
}

// True when the query's own source outscores every other corpus digest
// strictly. Equal best scores are treated as a failed identification.
bool source_wins(const digest& q, const std::vector<digest>& db,
                 std::size_t source, int& source_score) {
    source_score = score(q, db[source]);
    for (std::size_t j = 0; j < db.size(); ++j) {
        if (j == source)
            continue;
        if (score(q, db[j]) >= source_score)
            return false;
    }
    return true;
}

struct trial_result {
    bool matched = false;
    int score = 0;
    double expected = 0;
};

test_report aggregate_rank_trials(std::string title,
                                  const std::vector<int>& params,
                                  std::size_t n_files,
                                  const std::vector<trial_result>& results) {
    test_report rep;
    rep.title = std::move(title);
    rep.trials_per_row = n_files;
    rep.rows.reserve(params.size());
    for (std::size_t row = 0; row < params.size(); ++row) {
        report_row r;
        r.parameter = params[row];
        double score_sum = 0, expected_sum = 0;
        for (std::size_t f = 0; f < n_files; ++f) {
            const trial_result& t = results[row * n_files + f];
            expected_sum += t.expected;
            if (t.matched) {
                ++r.matches;
                score_sum += t.score;
            }
        }
        r.match_rate = n_files ? 100.0 * static_cast<double>(r.matches) /
                                     static_cast<double>(n_files)
                               : 0.0;
        r.avg_score = r.matches ? score_sum / static_cast<double>(r.matches) : 0.0;
        r.expected_min_score = n_files ? expected_sum / static_cast<double>(n_files) : 0.0;
        rep.rows.push_back(r);
    }
    rep.points.reserve(results.size());
    for (std::size_t row = 0; row < params.size(); ++row) {
        for (std::size_t f = 0; f < n_files; ++f) {
            const trial_result& t = results[row * n_files + f];
            rep.points.push_back({static_cast<double>(params[row]), t.score,
                                  t.expected, t.matched});
        }
    }
    return rep;
}

using mutate_fn = mutated (*)(const corpus_file&, int param, rng& r);

test_report run_rank_test(const corpus& c, const std::vector<int>& params,
                          const harness_config& cfg, std::uint64_t tag,
                          std::string title, mutate_fn mutate) {
    const std::vector<digest> db = digest_corpus(c, cfg);
    const std::size_t n_files = c.files.size();
    std::vector<trial_result> results(params.size() * n_files);
    rng base(cfg.rng_seed);

    parallel_for(results.size(), cfg.threads, [&](std::size_t t) {
        const std::size_t row = t / n_files;
        const std::size_t file = t % n_files;
        rng r = base.derive(task_label(tag, row, file));
        mutated m = mutate(c.files[file], params[row], r);
        const digest q = digest_bytes(m.bytes, "query", cfg.k, cfg.hash_seed);
        trial_result& out = results[t];
        out.expected = m.spec.expected_min_score;
        out.matched = source_wins(q, db, file, out.score);
    });

    return aggregate_rank_trials(std::move(title), params, n_files, results);
}

} // namespace

std::vector<int> default_fragment_sizes() {
    std::vector<int> sizes;
    for (int s = 95; s >= 5; s -= 5)
        sizes.push_back(s);
    for (int s = 4; s >= 1; --s)
        sizes.push_back(s);
    return sizes;
}

std::vector<int> default_alignment_percents() { return {10, 50, 100, 300, 500}; }

std::vector<int> default_alignment_kbs() {
    std::vector<int> kbs;
    for (int k = 4; k <= 64; k += 4)
        kbs.push_back(k);
    return kbs;
}

std::vector<int> default_score_bands() {
    std::vector<int> bands;
    for (int b = 95; b >= 5; b -= 5)
        bands.push_back(b);
    return bands;
}

test_report fragment_test(const corpus& c, const std::vector<int>& keep_sizes,
                          bool random_cut, const harness_config& cfg) {
    if (random_cut) {
        return run_rank_test(
            c, keep_sizes, cfg, tag_fragment_random, "fragment random-cut",
            [](const corpus_file& f, int param, rng& r) {
                return fragment_random(f.bytes, param, r);
            });
    }
    return run_rank_test(
        c, keep_sizes, cfg, tag_fragment_end, "fragment end-cut",
        [](const corpus_file& f, int param, rng&) {
            return fragment_end(f.bytes, param);
        });
}

test_report alignment_percent_test(const corpus& c, const std::vector<int>& percents,
                                   const harness_config& cfg) {
    return run_rank_test(
        c, percents, cfg, tag_alignment_percent, "alignment percent",
        [](const corpus_file& f, int param, rng& r) {
            const std::size_t pad = f.bytes.size() * static_cast<std::size_t>(param) / 100;
            mutated m = prepend_padding(f.bytes, pad, r);
            m.spec.parameter = param;
            return m;
        });
}

test_report alignment_fixed_test(const corpus& c, const std::vector<int>& pad_kb,
                                 const harness_config& cfg) {
    return run_rank_test(
        c, pad_kb, cfg, tag_alignment_fixed, "alignment fixed",
        [](const corpus_file& f, int param, rng& r) {
            const std::size_t pad = static_cast<std::size_t>(param) * 1024;
            mutated m = prepend_padding(f.bytes, pad, r);
            m.spec.parameter = param;
            return m;
        });
}

noise_report noise_test(const corpus& c, std::size_t subset_size,
                        const harness_config& cfg) {
    const std::vector<int> bands = default_score_bands();
    const std::size_t n = c.files.size();
    std::size_t subset = subset_size == 0 ? std::min<std::size_t>(20, n)
                                          : std::min(subset_size, n);

    std::vector<std::size_t> picks(subset);
    for (std::size_t i = 0; i < subset; ++i)
        picks[i] = i * n / subset; // even spread across the corpus

    struct band_entry {
        bool entered = false;
        std::uint64_t edits = 0;
        int score = 0;
        std::uint64_t longest = 0; // max of original and mutated length
    };
    struct file_sweep {
        std::vector<band_entry> per_band;
        noise_outcome outcome;
    };
    std::vector<file_sweep> sweeps(subset);
    rng base(cfg.rng_seed);

    parallel_for(subset, cfg.threads, [&](std::size_t i) {
        const corpus_file& f = c.files[picks[i]];
        rng r = base.derive(task_label(tag_noise, 0, picks[i]));

        file_sweep& sweep = sweeps[i];
        sweep.per_band.resize(bands.size());
        sweep.outcome.name = f.name;
        sweep.outcome.size = f.bytes.size();

        const digest original = digest_bytes(f.bytes, f.name, cfg.k, cfg.hash_seed);
        std::vector<std::uint8_t> working = f.bytes;
        const std::uint64_t stop = f.bytes.size() * 8 / 10;
        std::uint64_t edits = 0;
        std::size_t band_ptr = 0;

        while (edits < stop && band_ptr < bands.size()) {
            const std::size_t batch = noise_batch_size(edits);
            apply_noise_batch(working, batch, r);
            edits += batch;

            const digest q = digest_bytes(working, "noisy", cfg.k, cfg.hash_seed);
            const int s = score(q, original);

            if (!sweep.outcome.crossed_below_25 && s < 25) {
                sweep.outcome.crossed_below_25 = true;
                sweep.outcome.edits_to_below_25 = edits;
            }

            // Slot the observation into the band whose range [band, next
            // higher band) contains the score. A score still above every
            // remaining band records nothing, and bands the score jumped
            // clean over stay unentered.
            std::size_t t_idx = band_ptr;
            while (t_idx < bands.size() && bands[t_idx] > s)
                ++t_idx;
            const int band_upper = t_idx == 0 ? 100 : bands[t_idx - 1];
            if (t_idx < bands.size() && s < band_upper) {
                band_entry& e = sweep.per_band[t_idx];
                e.entered = true;
                e.edits = edits;
                e.score = s;
                e.longest = std::max<std::uint64_t>(f.bytes.size(), working.size());
                band_ptr = t_idx + 1;
            }
        }
        if (!sweep.outcome.crossed_below_25)
            sweep.outcome.edits_to_below_25 = edits; // censored at the stop point
    });

    noise_report rep;
    rep.table.title = "noise";
    rep.table.trials_per_row = subset;
    for (std::size_t b = 0; b < bands.size(); ++b) {
        report_row row;
        row.parameter = bands[b];
        double score_sum = 0, expected_sum = 0;
        for (const file_sweep& sweep : sweeps) {
            const band_entry& e = sweep.per_band[b];
            if (!e.entered)
                continue;
            ++row.matches;
            score_sum += e.score;
            expected_sum += expected_score_bound(e.edits, sweep.outcome.size, e.longest);
        }
        if (row.matches == 0)
            continue; // band was always jumped over; nothing to report
        row.match_rate = 100.0 * static_cast<double>(row.matches) /
                         static_cast<double>(subset);
        row.avg_score = score_sum / static_cast<double>(row.matches);
        row.expected_min_score = expected_sum / static_cast<double>(row.matches);
        rep.table.rows.push_back(row);
    }
    for (file_sweep& sweep : sweeps)
        rep.outcomes.push_back(std::move(sweep.outcome));
    return rep;
}

test_report scb_test(std::size_t total_size, std::size_t trials,
                     const harness_config& cfg) {
    const std::vector<int> bands = default_score_bands();
    constexpr std::size_t min_block = 16 * 1024;

    std::vector<std::size_t> block_sizes;
    for (std::size_t b = total_size / 2; b >= min_block; b /= 2)
        block_sizes.push_back(b);

    struct band_entry {
        bool achieved = false;
        std::size_t smallest_block = 0;
        int score = 0;
    };
    std::vector<std::vector<band_entry>> per_trial(trials);
    rng base(cfg.rng_seed);

    parallel_for(trials, cfg.threads, [&](std::size_t t) {
        rng r = base.derive(task_label(tag_scb, total_size / min_block, t));

        std::vector<int> scores(block_sizes.size());
        for (std::size_t bi = 0; bi < block_sizes.size(); ++bi) {
            common_block_pair pair = make_common_block_pair(total_size, block_sizes[bi], r);
            const digest da = digest_bytes(pair.a, "a", cfg.k, cfg.hash_seed);
            const digest db = digest_bytes(pair.b, "b", cfg.k, cfg.hash_seed);
            scores[bi] = score(da, db);
        }

        auto& entries = per_trial[t];
        entries.resize(bands.size());
        for (std::size_t b = 0; b < bands.size(); ++b) {
            for (std::size_t bi = 0; bi < block_sizes.size(); ++bi) {
                if (scores[bi] >= bands[b]) {
                    entries[b].achieved = true;
                    entries[b].smallest_block = block_sizes[bi];
                    entries[b].score = scores[bi];
                }
            }
        }
    });

    test_report rep;
    rep.title = "common block " + std::to_string(total_size / 1024) + "KB";
    rep.trials_per_row = trials;
    for (std::size_t b = 0; b < bands.size(); ++b) {
        report_row row;
        row.parameter = bands[b];
        double score_sum = 0, expected_sum = 0;
        for (const auto& entries : per_trial) {
            const band_entry& e = entries[b];
            if (!e.achieved)
                continue;
            ++row.matches;
            score_sum += e.score;
            expected_sum += expected_score_bound(total_size - e.smallest_block,
                                                 total_size, total_size);
        }
        if (row.matches == 0)
            continue;
        row.match_rate = 100.0 * static_cast<double>(row.matches) /
                         static_cast<double>(trials);
        row.avg_score = score_sum / static_cast<double>(row.matches);
        row.expected_min_score = expected_sum / static_cast<double>(row.matches);
        rep.rows.push_back(row);
    }
    return rep;
}

bound_summary lower_bound_report(const std::vector<test_report>& reports,
                                 double tolerance) {
    bound_summary s;
    s.tolerance = tolerance;
    for (const test_report& rep : reports) {
        for (const report_row& row : rep.rows) {
            if (row.matches == 0)
                continue;
            ++s.points;
            if (row.avg_score <= row.expected_min_score)
                ++s.within;
            if (row.avg_score <= row.expected_min_score + tolerance)
                ++s.within_tol;
        }
    }
    return s;
}

void write_csv(std::ostream& out, const test_report& report) {
    out << "# " << report.title << " (trials per row: " << report.trials_per_row << ")\n";
    out << "parameter,matches,match_rate,avg_score,expected_min_score\n";
    char buf[128];
    for (const report_row& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%g,%zu,%.1f,%.2f,%.2f\n",
                      r.parameter, r.matches, r.match_rate, r.avg_score,
                      r.expected_min_score);
        out << buf;
    }
}

void write_summary(std::ostream& out, const bound_summary& s) {
    char buf[160];
    const double pct = s.points ? 100.0 * static_cast<double>(s.within) /
                                      static_cast<double>(s.points)
                                : 0.0;
    const double pct_tol = s.points ? 100.0 * static_cast<double>(s.within_tol) /
                                          static_cast<double>(s.points)
                                    : 0.0;
    std::snprintf(buf, sizeof buf,
                  "# score ceiling: %zu points, %zu within bound (%.1f%%), "
                  "%zu within bound+%g (%.1f%%)\n",
                  s.points, s.within, pct, s.within_tol, s.tolerance, pct_tol);
    out << buf;
}

} // namespace lzjd::eval
