// Command line front end: corpus preparation, structural statistics,
// micro-benchmarks and synthetic corpus generation.
#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <ctriepp/bench.hpp>
#include <ctriepp/ctriepp.hpp>
#include <ctriepp/oracle.hpp>

namespace {

using namespace ctriepp;

void apply_config(dictionary_config& cfg, const std::vector<std::string>& kvs) {
    for (const std::string& kv : kvs) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw usage_error("--config expects KEY=VAL, got: " + kv);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        try {
            if (key == "sigma")
                cfg.sigma = uint32_t(std::stoul(val));
            else if (key == "hash_count")
                cfg.dict.hash_count = uint32_t(std::stoul(val));
            else if (key == "max_walk")
                cfg.dict.max_walk = uint32_t(std::stoul(val));
            else if (key == "max_load")
                cfg.dict.max_load = std::stod(val);
            else if (key == "promote_children")
                cfg.dict.promote_children = val == "1" || val == "true";
            else if (key == "promote_threshold")
                cfg.dict.promote_threshold = uint32_t(std::stoul(val));
            else if (key == "seed")
                cfg.dict.seed = std::stoull(val);
            else
                throw usage_error("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw usage_error("bad value for config key " + key + ": " + val);
        }
    }
}

void print_hist(const char* name, const std::vector<uint64_t>& hist) {
    for (size_t i = 0; i < hist.size(); ++i)
        if (hist[i])
            std::printf("%s_%zu\t%" PRIu64 "\n", name, i, hist[i]);
}

std::string basename_of(const std::string& path) {
    const size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

int cmd_prepare(const std::string& input, const std::string& output,
                const std::string& split) {
    const std::string raw = bench::load_bytes(input);
    const bench::corpus c = bench::prepare(
        raw, split == "fullstop" ? bench::split_mode::sentences
                                 : bench::split_mode::lines);
    bench::save_corpus(output, c);
    std::printf("prepared %zu keywords -> %s\n", c.size(), output.c_str());
    return 0;
}

int cmd_stats(const std::string& input, bool histograms,
              dictionary_config cfg) {
    const bench::corpus c = bench::load_corpus(input);
    const bench::corpus_stats cs = bench::compute_corpus_stats(c);

    std::printf("keywords\t%" PRIu64 "\n", cs.keywords);
    std::printf("total_bytes\t%" PRIu64 "\n", cs.total_bytes);
    std::printf("distinct_bytes\t%" PRIu64 "\n", cs.distinct_bytes);
    std::printf("avg_len\t%.3f\n", cs.avg_len);
    std::printf("max_len\t%" PRIu64 "\n", cs.max_len);
    std::printf("avg_lcp\t%.3f\n", cs.avg_lcp);
    std::printf("max_lcp\t%" PRIu64 "\n", cs.max_lcp);
    std::printf("trie_nodes\t%" PRIu64 "\n", cs.trie_nodes);
    if (histograms) {
        print_hist("len_hist", cs.len_hist);
        print_hist("lcp_hist", cs.lcp_hist);
    }

    keyword_dictionary dict(cfg);
    for (const std::string& k : c) dict.insert(k);
    const bench::structure_stats ss = bench::compute_structure_stats(dict);
    std::printf("arena_nodes\t%" PRIu64 "\n", ss.arena_nodes);
    std::printf("abstract_nodes\t%" PRIu64 "\n", ss.abstract_nodes);
    std::printf("tries\t%" PRIu64 "\n", ss.tries);
    if (histograms) {
        print_hist("child_hist", ss.child_hist);
        print_hist("handle_hist", ss.handle_hist);
    }
    std::printf("text_payload_bits\t%" PRIu64 "\n", ss.space.text_payload_bits);
    std::printf("aux_bits\t%" PRIu64 "\n", ss.space.aux_bits());
    std::printf("total_bits\t%" PRIu64 "\n", ss.space.total_bits());
    return 0;
}

struct bench_args {
    std::string input;
    std::string tsv = "-";
    std::string dataset;
    std::string phase;
    std::string build_order;
    std::string query_order;
    uint64_t seed = 42;
    bool deterministic = false;
    std::vector<double> fractions;
};

int cmd_bench(const bench_args& a, dictionary_config cfg) {
    const bench::corpus c = bench::load_corpus(a.input);
    bench::workload_options opt;
    opt.dataset = a.dataset.empty() ? basename_of(a.input) : a.dataset;
    opt.seed = a.seed;
    opt.deterministic = a.deterministic;
    if (!a.fractions.empty()) opt.fractions = a.fractions;
    opt.phase = a.phase;
    opt.build_order = a.build_order;
    opt.query_order = a.query_order;
    opt.dict = cfg;
    const std::vector<bench::workload_row> rows = bench::run_workload(c, opt);
    const std::string tsv = bench::to_tsv(rows);
    if (a.tsv.empty() || a.tsv == "-") {
        std::fputs(tsv.c_str(), stdout);
    } else {
        std::ofstream out(a.tsv, std::ios::binary);
        if (!out) throw io_error("cannot open for writing: " + a.tsv);
        out << tsv;
    }
    return 0;
}

int cmd_gen(const std::string& output, uint64_t keywords, uint64_t bytes,
            uint64_t seed) {
    bench::gen_options opt;
    opt.keywords = keywords;
    opt.target_bytes = bytes;
    opt.seed = seed;
    const bench::corpus c = bench::generate_corpus(opt);
    bench::save_corpus(output, c);
    uint64_t total = 0;
    for (const std::string& k : c) total += k.size();
    std::printf("generated %zu keywords, %" PRIu64 " bytes -> %s\n", c.size(),
                total, output.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compact packed keyword dictionary toolkit"};
    app.require_subcommand(1);

    auto* prepare = app.add_subcommand("prepare", "turn raw text into a keyword file");
    std::string p_in, p_out, p_split = "newline";
    prepare->add_option("input", p_in, "raw text file")->required();
    prepare->add_option("--split", p_split, "record separator")
        ->check(CLI::IsMember({"newline", "fullstop"}));
    prepare->add_option("--out", p_out, "keyword file to write")->required();

    auto* stats = app.add_subcommand("stats", "corpus and trie structure statistics");
    std::string s_in;
    bool s_hist = false;
    std::vector<std::string> s_config;
    stats->add_option("input", s_in, "keyword file")->required();
    stats->add_flag("--histograms", s_hist, "include length/lcp/fan-out histograms");
    stats->add_option("--config", s_config, "dictionary tuning KEY=VAL")->take_all();

    auto* bench_cmd = app.add_subcommand("bench", "timed insert/lookup/prefix workloads");
    bench_args b;
    std::vector<std::string> b_config;
    bench_cmd->add_option("input", b.input, "keyword file")->required();
    bench_cmd->add_option("--phase", b.phase, "restrict to one phase")
        ->check(CLI::IsMember({"insert", "locate", "prefix"}));
    bench_cmd->add_option("--build-order", b.build_order, "restrict build order")
        ->check(CLI::IsMember({"random", "sorted"}));
    bench_cmd->add_option("--query-order", b.query_order, "restrict query order")
        ->check(CLI::IsMember({"random", "sorted", "same"}));
    bench_cmd->add_option("--fractions", b.fractions,
                          "prefix fractions of average length")
        ->delimiter(',');
    bench_cmd->add_option("--seed", b.seed, "shuffle seed");
    bench_cmd
        ->add_option("--config", b_config,
                     "dictionary tuning KEY=VAL (sigma, hash_count, max_walk, "
                     "max_load, promote_children, promote_threshold, seed)")
        ->take_all();
    bench_cmd->add_option("--tsv", b.tsv, "TSV path, - for stdout");
    bench_cmd->add_option("--dataset", b.dataset, "dataset label for rows");
    bench_cmd->add_flag("--deterministic", b.deterministic,
                        "zero timing and memory columns for reproducible bytes");

    auto* gen = app.add_subcommand("gen", "write a synthetic prefix-sharing corpus");
    std::string g_out;
    uint64_t g_keywords = 100000, g_bytes = 1500000, g_seed = 42;
    gen->add_option("--out", g_out, "keyword file to write")->required();
    gen->add_option("--keywords", g_keywords, "number of keywords");
    gen->add_option("--bytes", g_bytes, "approximate total bytes");
    gen->add_option("--seed", g_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        ctriepp::dictionary_config cfg;
        if (prepare->parsed()) return cmd_prepare(p_in, p_out, p_split);
        if (stats->parsed()) {
            apply_config(cfg, s_config);
            return cmd_stats(s_in, s_hist, cfg);
        }
        if (bench_cmd->parsed()) {
            apply_config(cfg, b_config);
            return cmd_bench(b, cfg);
        }
        if (gen->parsed()) return cmd_gen(g_out, g_keywords, g_bytes, g_seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
