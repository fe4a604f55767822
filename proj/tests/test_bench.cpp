#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <ctriepp/bench.hpp>

using namespace ctriepp;
using namespace ctriepp::bench;

namespace {

const corpus kWords = {"brauereibräute", "brauen", "brauchbares",
                       "brausendes", "brauereibier"};

}  // namespace

TEST_CASE("prepare splits lines, strips CR, drops empties and duplicates") {
    REQUIRE(prepare("a\nb\r\na\n\nc", split_mode::lines) == corpus{"a", "b", "c"});
    REQUIRE(prepare("a\nb", split_mode::lines) == corpus{"a", "b"});
    REQUIRE(prepare("a\r\nb\r", split_mode::lines) == corpus{"a", "b"});
    REQUIRE(prepare("\r\n\n\r", split_mode::lines).empty());
    REQUIRE(prepare("", split_mode::lines).empty());
    REQUIRE(prepare("x y\nx y\nx  y", split_mode::lines) ==
            corpus{"x y", "x  y"});
    // the raw five-word file shape: blank line, repeat, CRLF repeat
    const std::string raw =
        "brauereibräute\nbrauen\nbrauchbares\n\nbrauen\r\nbrausendes\n"
        "brauereibier\n";
    REQUIRE(prepare(raw, split_mode::lines) == kWords);
}

TEST_CASE("prepare in sentence mode trims fragments around full stops") {
    REQUIRE(prepare("Der Hund. Die  Katze.\n Der Hund.  \r\n. x",
                    split_mode::sentences) ==
            corpus{"Der Hund", "Die  Katze", "x"});
    REQUIRE(prepare("one.two.one", split_mode::sentences) ==
            corpus{"one", "two"});
    REQUIRE(prepare(" . . ", split_mode::sentences).empty());
}

TEST_CASE("geometric buckets") {
    REQUIRE(geo_bucket(0) == 0);
    REQUIRE(geo_bucket(1) == 1);
    REQUIRE(geo_bucket(2) == 2);
    REQUIRE(geo_bucket(3) == 3);
    REQUIRE(geo_bucket(4) == 3);
    REQUIRE(geo_bucket(5) == 4);
    REQUIRE(geo_bucket(8) == 4);
    REQUIRE(geo_bucket(9) == 5);
    REQUIRE(geo_bucket(15) == 5);
    REQUIRE(geo_bucket(16) == 5);
    REQUIRE(geo_bucket(17) == 6);
    REQUIRE(geo_bucket(1u << 20) == 21);

    std::vector<uint64_t> h;
    bump(h, 0);
    bump(h, 6);
    bump(h, 6);
    REQUIRE(h == std::vector<uint64_t>{1, 0, 0, 0, 2});
}

TEST_CASE("corpus statistics for the five-word corpus") {
    const corpus_stats s = compute_corpus_stats(kWords);
    REQUIRE(s.keywords == 5);
    REQUIRE(s.total_bytes == 54);
    REQUIRE(s.distinct_bytes == 14);
    REQUIRE(s.max_len == 15);
    REQUIRE(s.avg_len == Catch::Approx(10.8));
    REQUIRE(s.max_lcp == 9);
    REQUIRE(s.avg_lcp == Catch::Approx(5.5));  // neighbor lcps 4, 5, 9, 4
    REQUIRE(s.trie_nodes == 9);
    REQUIRE(s.len_hist == std::vector<uint64_t>{0, 0, 0, 0, 1, 4});
    REQUIRE(s.lcp_hist == std::vector<uint64_t>{0, 0, 0, 2, 1, 1});

    const corpus_stats one = compute_corpus_stats({"solo"});
    REQUIRE(one.avg_lcp == 0.0);
    REQUIRE(one.max_lcp == 0);
    REQUIRE(one.trie_nodes == 2);
    REQUIRE_THROWS_AS(compute_corpus_stats({}), empty_corpus);
}

TEST_CASE("structure statistics for the five-word dictionary") {
    keyword_dictionary d;
    for (const std::string& k : kWords) d.insert(k);
    const structure_stats s = compute_structure_stats(d);
    REQUIRE(s.arena_nodes == 12);
    REQUIRE(s.abstract_nodes == 9);
    REQUIRE(s.tries == 4);
    REQUIRE(s.space.keywords == 5);
    REQUIRE(s.space.text_payload_bits == 576);
    // abstract fan-out: five leaves, the root chain, two binary branches,
    // one ternary branch
    REQUIRE(s.child_hist == std::vector<uint64_t>{5, 1, 2, 1});
    // handle tables: two singleton windows, one of 3, the top window of 6
    REQUIRE(s.handle_hist == std::vector<uint64_t>{0, 2, 0, 1, 1});
}

TEST_CASE("seeded shuffles are reproducible") {
    std::vector<int> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> b = a;
    std::vector<int> c = a;
    shuffle_vec(a, 7);
    shuffle_vec(b, 7);
    shuffle_vec(c, 8);
    REQUIRE(a == b);
    REQUIRE(a != c);
    std::sort(a.begin(), a.end());
    REQUIRE(a == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("deterministic workloads have fixed shape and counts") {
    workload_options opt;
    opt.dataset = "words5";
    opt.deterministic = true;
    const std::vector<workload_row> rows = run_workload(kWords, opt);
    REQUIRE(rows.size() == 13);

    const std::vector<std::pair<std::string, std::string>> want = {
        {"insert", "random"},        {"locate", "random-random"},
        {"locate", "random-sorted"}, {"locate", "random-same"},
        {"prefix:0.60", "random-random"}, {"prefix:0.70", "random-random"},
        {"prefix:0.80", "random-random"}, {"prefix:0.90", "random-random"},
        {"prefix:1.00", "random-random"}, {"insert", "sorted"},
        {"locate", "sorted-random"}, {"locate", "sorted-sorted"},
        {"locate", "sorted-same"}};
    for (size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].dataset == "words5");
        REQUIRE(rows[i].phase == want[i].first);
        REQUIRE(rows[i].order == want[i].second);
        REQUIRE(rows[i].ops == 5);
        REQUIRE(rows[i].mean_ns == 0);
        REQUIRE(rows[i].peak_bytes == 0);
    }
    for (size_t i : {0u, 1u, 2u, 3u, 9u, 10u, 11u, 12u})
        REQUIRE(rows[i].matches == 5);  // every keyword is found
    // prefix cuts at 6, 8, 9, 10, 11 bytes of the 10.8-byte average
    REQUIRE(rows[4].matches == 7);
    REQUIRE(rows[5].matches == 7);
    REQUIRE(rows[6].matches == 7);
    REQUIRE(rows[7].matches == 5);
    REQUIRE(rows[8].matches == 5);

    const std::vector<workload_row> again = run_workload(kWords, opt);
    REQUIRE(to_tsv(rows) == to_tsv(again));

    workload_options live = opt;
    live.deterministic = false;
    const std::vector<workload_row> timed = run_workload(kWords, live);
    REQUIRE(timed.size() == 13);
    REQUIRE(timed[0].peak_bytes > 0);  // VmHWM is available here
}

TEST_CASE("workload rejects an effectively empty corpus") {
    REQUIRE_THROWS_AS(run_workload({}, {}), empty_corpus);
    REQUIRE_THROWS_AS(run_workload({"", ""}, {}), empty_corpus);
}

TEST_CASE("tsv rendering is exact") {
    const workload_row a{"d1", "insert", "random", 12, 34, 5, 0};
    const workload_row b{"d1", "prefix:0.60", "random-random", 0, 0, 7, 3};
    REQUIRE(to_tsv({a, b}) ==
            "dataset\tphase\torder\tmean_ns\tpeak_bytes\tops\n"
            "d1\tinsert\trandom\t12\t34\t5\n"
            "d1\tprefix:0.60\trandom-random\t0\t0\t7\n");
    REQUIRE(to_tsv({}) == "dataset\tphase\torder\tmean_ns\tpeak_bytes\tops\n");
}

TEST_CASE("generated corpora are deterministic, distinct and line-safe") {
    gen_options g;
    g.keywords = 500;
    g.target_bytes = 6000;
    g.seed = 7;
    const corpus c1 = generate_corpus(g);
    const corpus c2 = generate_corpus(g);
    REQUIRE(c1 == c2);
    REQUIRE(c1.size() == 500);
    const std::set<std::string> uniq(c1.begin(), c1.end());
    REQUIRE(uniq.size() == c1.size());
    uint64_t total = 0;
    for (const std::string& k : c1) {
        REQUIRE_FALSE(k.empty());
        for (char ch : k) {
            REQUIRE(ch >= '!');
            REQUIRE(ch <= '~');
        }
        total += k.size();
    }
    REQUIRE(total >= 2000);   // near the requested density
    REQUIRE(total <= 20000);

    g.seed = 8;
    REQUIRE(generate_corpus(g) != c1);
    g.keywords = 0;
    REQUIRE_THROWS_AS(generate_corpus(g), empty_corpus);
}

TEST_CASE("corpus files round-trip through save and load") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "ctriepp_bench_io.txt")
            .string();
    save_corpus(path, kWords);
    REQUIRE(load_corpus(path) == kWords);
    REQUIRE(load_bytes(path) ==
            "brauereibräute\nbrauen\nbrauchbares\nbrausendes\nbrauereibier\n");
    std::remove(path.c_str());
    REQUIRE_THROWS_AS(load_corpus(path), io_error);
    REQUIRE_THROWS_AS(load_bytes(path), io_error);
}
