// lzjd-eval: resilience harness for lzjd digests. Degrades known inputs in
// controlled ways (fragment cuts, front padding, random noise, single shared
// blocks) and reports how well digest comparison still identifies the
// source, table by table, next to the analytic score ceiling each mutation
// allows.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lzjd/errors.hpp"
#include "lzjd/eval/corpus.hpp"
#include "lzjd/eval/harness.hpp"

namespace fs = std::filesystem;
using namespace lzjd::eval;

namespace {

struct eval_options {
    std::string corpus_dir;
    std::string out_path;
    std::uint64_t seed = 1;
    std::uint32_t k = 1024;
    unsigned threads = 0;
    std::size_t n_files = 50;
    std::size_t min_size = 64 * 1024;
    std::size_t max_size = 2 * 1024 * 1024;
    std::size_t scb_trials = 50;
    std::size_t noise_subset = 0; // 0 = min(20, corpus size)
};

// Uses the corpus directory when it already holds files; otherwise
// synthesizes one (and persists it if a directory was named).
corpus resolve_corpus(const eval_options& opt) {
    if (!opt.corpus_dir.empty() && fs::is_directory(opt.corpus_dir)) {
        corpus c = load_corpus(opt.corpus_dir);
        if (!c.files.empty()) {
            std::cerr << "lzjd-eval: using " << c.files.size() << " files from "
                      << opt.corpus_dir << "\n";
            return c;
        }
    }
    corpus_params params;
    params.n_files = opt.n_files;
    params.min_size = opt.min_size;
    params.max_size = opt.max_size;
    params.seed = opt.seed;
    corpus c = generate_corpus(params);
    std::cerr << "lzjd-eval: generated " << c.files.size()
              << " synthetic files (seed " << opt.seed << ")\n";
    if (!opt.corpus_dir.empty()) {
        write_corpus(c, opt.corpus_dir);
        std::cerr << "lzjd-eval: wrote corpus to " << opt.corpus_dir << "\n";
    }
    return c;
}

harness_config make_config(const eval_options& opt) {
    harness_config cfg;
    cfg.k = opt.k;
    cfg.rng_seed = opt.seed;
    cfg.threads = opt.threads;
    return cfg;
}

void emit(std::ostream& out, const std::vector<test_report>& reports) {
    for (const test_report& r : reports) {
        write_csv(out, r);
        out << "\n";
    }
    write_summary(out, lower_bound_report(reports));
}

} // namespace

int main(int argc, char** argv) {
    eval_options opt;

    CLI::App app{"lzjd-eval: digest resilience harness"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--corpus", opt.corpus_dir,
                   "corpus directory (loaded if populated, else generated there)");
    app.add_option("--out", opt.out_path, "report file (default: stdout)");
    app.add_option("--seed", opt.seed, "seed for corpus synthesis and mutations")
        ->capture_default_str();
    app.add_option("--k", opt.k, "digest size")->capture_default_str();
    app.add_option("-p,--threads", opt.threads, "worker threads (default: all cores)");
    app.add_option("--files", opt.n_files, "synthetic corpus size")
        ->capture_default_str();
    app.add_option("--min-size", opt.min_size, "smallest synthetic file in bytes")
        ->capture_default_str();
    app.add_option("--max-size", opt.max_size, "largest synthetic file in bytes")
        ->capture_default_str();
    app.add_option("--trials", opt.scb_trials, "trials per shared-block size")
        ->capture_default_str();
    app.add_option("--subset", opt.noise_subset,
                   "files to degrade in the noise test (0 = min(20, corpus))");

    auto* cmd_fragment = app.add_subcommand("fragment", "fragment identification sweep");
    auto* cmd_alignment = app.add_subcommand("alignment", "front padding sweep");
    auto* cmd_noise = app.add_subcommand("noise", "random edit degradation");
    auto* cmd_scb = app.add_subcommand("scb", "single shared block between random files");
    auto* cmd_all = app.add_subcommand("all", "every test plus the ceiling summary");
    auto* cmd_corpus = app.add_subcommand("corpus", "generate a synthetic corpus only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_corpus->parsed()) {
            if (opt.corpus_dir.empty()) {
                std::cerr << "lzjd-eval: corpus generation needs --corpus DIR\n";
                return 2;
            }
            corpus_params params;
            params.n_files = opt.n_files;
            params.min_size = opt.min_size;
            params.max_size = opt.max_size;
            params.seed = opt.seed;
            write_corpus(generate_corpus(params), opt.corpus_dir);
            std::cerr << "lzjd-eval: wrote " << params.n_files << " files to "
                      << opt.corpus_dir << "\n";
            return 0;
        }

        std::ofstream out_file;
        std::ostream* out = &std::cout;
        if (!opt.out_path.empty()) {
            out_file.open(opt.out_path, std::ios::binary);
            if (!out_file) {
                std::cerr << "lzjd-eval: " << opt.out_path << ": cannot open for writing\n";
                return 1;
            }
            out = &out_file;
        }

        const harness_config cfg = make_config(opt);
        std::vector<test_report> reports;

        const bool want_fragment = cmd_fragment->parsed() || cmd_all->parsed();
        const bool want_alignment = cmd_alignment->parsed() || cmd_all->parsed();
        const bool want_noise = cmd_noise->parsed() || cmd_all->parsed();
        const bool want_scb = cmd_scb->parsed() || cmd_all->parsed();

        corpus c;
        if (want_fragment || want_alignment || want_noise)
            c = resolve_corpus(opt);

        if (want_fragment) {
            reports.push_back(fragment_test(c, default_fragment_sizes(), false, cfg));
            reports.push_back(fragment_test(c, default_fragment_sizes(), true, cfg));
        }
        if (want_alignment) {
            reports.push_back(alignment_percent_test(c, default_alignment_percents(), cfg));
            reports.push_back(alignment_fixed_test(c, default_alignment_kbs(), cfg));
        }
        if (want_noise)
            reports.push_back(noise_test(c, opt.noise_subset, cfg).table);
        if (want_scb) {
            reports.push_back(scb_test(512 * 1024, opt.scb_trials, cfg));
            reports.push_back(scb_test(2 * 1024 * 1024, opt.scb_trials, cfg));
        }

        emit(*out, reports);
        out->flush();
        if (out_file.is_open() && !out_file) {
            std::cerr << "lzjd-eval: " << opt.out_path << ": write failed\n";
            return 1;
        }
    } catch (const lzjd::error& e) {
        std::cerr << "lzjd-eval: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
