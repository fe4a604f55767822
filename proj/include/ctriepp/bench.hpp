#pragma once

#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dictionary.hpp"
#include "oracle.hpp"

namespace ctriepp::bench {

using corpus = std::vector<std::string>;

enum class split_mode { lines, sentences };

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

// Raw text -> keyword list: split on newlines or full stops, trim sentence
// fragments, drop empties, keep the first occurrence of each keyword.
inline corpus prepare(std::string_view raw, split_mode mode) {
    corpus out;
    std::unordered_set<std::string_view> seen;
    const char sep = mode == split_mode::lines ? '\n' : '.';
    size_t pos = 0;
    while (pos <= raw.size()) {
        size_t end = raw.find(sep, pos);
        if (end == std::string_view::npos) end = raw.size();
        std::string_view piece = raw.substr(pos, end - pos);
        pos = end + 1;
        if (mode == split_mode::lines) {
            if (piece.ends_with('\r')) piece.remove_suffix(1);
        } else {
            while (!piece.empty() && is_ascii_space(piece.front()))
                piece.remove_prefix(1);
            while (!piece.empty() && is_ascii_space(piece.back()))
                piece.remove_suffix(1);
        }
        if (piece.empty()) continue;
        if (seen.insert(piece).second) out.emplace_back(piece);
    }
    return out;
}

inline corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string raw = buf.str();
    return prepare(raw, split_mode::lines);
}

inline void save_corpus(const std::string& path, const corpus& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (const std::string& k : c) out << k << '\n';
    if (!out) throw io_error("write failed: " + path);
}

inline std::string load_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Geometric histogram bucket: 0, 1 and 2 stand alone, then bucket i holds
// (2^(i-2), 2^(i-1)].
inline uint32_t geo_bucket(uint64_t v) {
    return v <= 2 ? uint32_t(v) : uint32_t(std::bit_width(v - 1)) + 1;
}

inline void bump(std::vector<uint64_t>& hist, uint64_t v) {
    const uint32_t b = geo_bucket(v);
    if (hist.size() <= b) hist.resize(b + 1, 0);
    ++hist[b];
}

struct corpus_stats {
    uint64_t keywords = 0;
    uint64_t total_bytes = 0;
    uint64_t distinct_bytes = 0;
    uint64_t max_len = 0;
    double avg_len = 0.0;
    uint64_t max_lcp = 0;
    double avg_lcp = 0.0;
    uint64_t trie_nodes = 0;
    std::vector<uint64_t> len_hist;
    std::vector<uint64_t> lcp_hist;  // consecutive pairs, sorted order
};

inline corpus_stats compute_corpus_stats(const corpus& c) {
    if (c.empty()) throw empty_corpus("stats: corpus has no keywords");
    corpus_stats s;
    s.keywords = c.size();
    bool seen[256] = {};
    for (const std::string& k : c) {
        s.total_bytes += k.size();
        s.max_len = std::max<uint64_t>(s.max_len, k.size());
        bump(s.len_hist, k.size());
        for (unsigned char b : k) seen[b] = true;
    }
    for (bool b : seen) s.distinct_bytes += b;
    s.avg_len = double(s.total_bytes) / double(s.keywords);

    std::vector<std::string> sorted(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end());
    uint64_t lcp_sum = 0;
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
        const uint64_t l = lcp_len(sorted[i], sorted[i + 1]);
        lcp_sum += l;
        s.max_lcp = std::max(s.max_lcp, l);
        bump(s.lcp_hist, l);
    }
    s.avg_lcp = sorted.size() > 1
                    ? double(lcp_sum) / double(sorted.size() - 1)
                    : 0.0;
    s.trie_nodes = compact_trie_node_count(sorted);
    return s;
}

struct structure_stats {
    uint64_t arena_nodes = 0;
    uint64_t abstract_nodes = 0;
    uint64_t tries = 0;
    space_report space;
    std::vector<uint64_t> child_hist;   // children per abstract node
    std::vector<uint64_t> handle_hist;  // sizes of non-empty handle tables
};

inline structure_stats compute_structure_stats(const keyword_dictionary& d) {
    structure_stats s;
    s.space = d.space();
    s.arena_nodes = s.space.arena_nodes;
    s.abstract_nodes = s.space.abstract_nodes;
    s.tries = s.space.tries;
    d.for_each_node([&](const keyword_dictionary::node_stats& n) {
        if (n.abstract_node) bump(s.child_hist, n.children);
    });
    d.for_each_trie([&](uint32_t, uint32_t handles) {
        if (handles > 0) bump(s.handle_hist, handles);
    });
    return s;
}

// Deterministic in-place shuffle; implementation-pinned so that identical
// seeds give identical orders on every platform and standard library.
template <class T>
inline void shuffle_vec(std::vector<T>& v, uint64_t seed) {
    uint64_t s = seed;
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[splitmix64(s) % i]);
}

inline uint64_t read_peak_rss_bytes() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) != 0) continue;
        uint64_t kb = 0;
        for (char ch : line)
            if (ch >= '0' && ch <= '9') kb = kb * 10 + uint64_t(ch - '0');
        return kb * 1024;
    }
    return 0;
}

struct workload_row {
    std::string dataset;
    std::string phase;  // insert | locate | prefix:<fraction>
    std::string order;  // build order, or build-query pair
    uint64_t mean_ns = 0;
    uint64_t peak_bytes = 0;
    uint64_t ops = 0;
    uint64_t matches = 0;  // not exported to TSV
};

struct workload_options {
    std::string dataset = "corpus";
    uint64_t seed = 42;
    bool deterministic = false;  // zero timing/memory columns for stable bytes
    std::vector<double> fractions = {0.6, 0.7, 0.8, 0.9, 1.0};
    std::string phase;        // insert | locate | prefix; empty runs all
    std::string build_order;  // random | sorted; empty runs both
    std::string query_order;  // random | sorted | same; empty runs all
    dictionary_config dict;
};

namespace detail {

inline uint64_t now_ns() {
    return uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now().time_since_epoch())
                        .count());
}

inline std::string fraction_label(double f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "prefix:%.2f", f);
    return buf;
}

}  // namespace detail

// Exercises one corpus: timed inserts under both build orders, lookups under
// random/sorted/build query orders, and prefix scans at several fractions of
// the average keyword length. Row timings are per-operation means.
inline std::vector<workload_row> run_workload(const corpus& input,
                                              const workload_options& opt) {
    corpus base;
    {
        std::unordered_set<std::string_view> seen;
        for (const std::string& k : input)
            if (!k.empty() && seen.insert(k).second) base.push_back(k);
    }
    if (base.empty()) throw empty_corpus("bench: corpus has no keywords");

    uint64_t total = 0;
    for (const std::string& k : base) total += k.size();
    const double avg_len = double(total) / double(base.size());

    corpus random_build = base;
    shuffle_vec(random_build, opt.seed + 1);
    corpus sorted_v = base;
    std::sort(sorted_v.begin(), sorted_v.end());
    corpus random_query = base;
    shuffle_vec(random_query, opt.seed + 2);

    std::vector<workload_row> rows;
    const auto phase_on = [&](std::string_view label) {
        return opt.phase.empty() ||
               label.substr(0, opt.phase.size()) == opt.phase;
    };
    const auto query_on = [&](std::string_view q) {
        return opt.query_order.empty() || opt.query_order == q;
    };
    auto emit = [&](const std::string& phase, const std::string& order,
                    uint64_t ns, uint64_t ops, uint64_t matches) {
        workload_row r;
        r.dataset = opt.dataset;
        r.phase = phase;
        r.order = order;
        r.ops = ops;
        r.matches = matches;
        if (!opt.deterministic) {
            r.mean_ns = ops ? ns / ops : 0;
            r.peak_bytes = read_peak_rss_bytes();
        }
        rows.push_back(std::move(r));
    };

    for (const bool sorted_build : {false, true}) {
        const corpus& build = sorted_build ? sorted_v : random_build;
        const std::string bname = sorted_build ? "sorted" : "random";
        if (!opt.build_order.empty() && opt.build_order != bname) continue;

        keyword_dictionary dict(opt.dict);
        uint64_t t0 = detail::now_ns();
        for (const std::string& k : build) dict.insert(k);
        if (phase_on("insert"))
            emit("insert", bname, detail::now_ns() - t0, build.size(),
                 build.size());

        const std::pair<const char*, const corpus*> queries[] = {
            {"random", &random_query}, {"sorted", &sorted_v}, {"same", &build}};
        if (phase_on("locate"))
            for (const auto& [qname, qs] : queries) {
                if (!query_on(qname)) continue;
                uint64_t hits = 0;
                t0 = detail::now_ns();
                for (const std::string& k : *qs) hits += dict.locate(k) != 0;
                emit("locate", bname + std::string("-") + qname,
                     detail::now_ns() - t0, qs->size(), hits);
            }

        if (!sorted_build && phase_on("prefix:") && query_on("random")) {
            for (const double f : opt.fractions) {
                const uint64_t cut = std::max<uint64_t>(
                    1, uint64_t(f * avg_len + 0.5));
                uint64_t found = 0;
                t0 = detail::now_ns();
                for (const std::string& k : random_query) {
                    const std::string_view pfx =
                        std::string_view(k).substr(0, std::min<uint64_t>(cut, k.size()));
                    prefix_cursor cur = dict.locate_prefix(pfx);
                    while (cur.next() != 0) ++found;
                }
                emit(detail::fraction_label(f), "random-random",
                     detail::now_ns() - t0, random_query.size(), found);
            }
        }
    }
    return rows;
}

inline std::string to_tsv(const std::vector<workload_row>& rows) {
    std::string out = "dataset\tphase\torder\tmean_ns\tpeak_bytes\tops\n";
    for (const workload_row& r : rows) {
        out += r.dataset;
        out += '\t';
        out += r.phase;
        out += '\t';
        out += r.order;
        out += '\t';
        out += std::to_string(r.mean_ns);
        out += '\t';
        out += std::to_string(r.peak_bytes);
        out += '\t';
        out += std::to_string(r.ops);
        out += '\n';
    }
    return out;
}

struct gen_options {
    uint64_t keywords = 100000;
    uint64_t target_bytes = 1500000;
    uint64_t seed = 42;
};

// Synthetic corpus with heavy prefix sharing: a seed keyword sets the length
// scale, then each new keyword chops a short random tail off an earlier one
// and grows a short fresh suffix. Lengths hover near target_bytes / keywords
// while almost every character is shared with other keywords, so the trie
// stays dense and the fresh text per keyword stays small.
inline corpus generate_corpus(const gen_options& opt) {
    if (opt.keywords == 0) throw empty_corpus("gen: keyword count is zero");
    const uint64_t avg =
        std::max<uint64_t>(4, opt.target_bytes / opt.keywords);
    const uint64_t tail = std::max<uint64_t>(2, avg / 8);
    uint64_t s = opt.seed;
    corpus out;
    std::unordered_set<std::string> seen;
    uint64_t attempts = 0;
    const uint64_t max_attempts = 100000 + 100 * opt.keywords;
    while (out.size() < opt.keywords) {
        if (++attempts > max_attempts)
            throw empty_corpus("gen: cannot reach requested keyword count");
        std::string k;
        uint64_t suffix = 1 + splitmix64(s) % tail;
        if (out.empty()) {
            suffix = avg;
        } else {
            const std::string& src = out[splitmix64(s) % out.size()];
            const uint64_t chop =
                splitmix64(s) % (std::min<uint64_t>(src.size(), tail) + 1);
            k = src.substr(0, src.size() - chop);
        }
        for (uint64_t i = 0; i < suffix; ++i)
            k += char('!' + splitmix64(s) % 94);  // printable, no separators
        if (seen.insert(k).second) out.push_back(std::move(k));
    }
    return out;
}

}  // namespace ctriepp::bench
