#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include <ctriepp/micro_trie.hpp>

using namespace ctriepp;

namespace {

// One hand-built window trie rooted at depth 0. Node set is the compact trie
// closure of the keys; handles are registered exactly as the dictionary does.
struct fixture {
    pack_config pc{256};
    packed_text text{pc};
    node_arena arena;
    dict_config dcfg{};
    hash_family fam{dcfg};
    std::vector<micro_trie> tries;
    node_id root = node_none;

    trie_env env() {
        return {&pc, &text, &arena, &fam, &dcfg};
    }

    explicit fixture(std::vector<std::string> keys) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::set<std::string> nodes{""};
        for (size_t i = 0; i + 1 < keys.size(); ++i)
            nodes.insert(keys[i].substr(0, lcp_of(keys[i], keys[i + 1])));
        nodes.insert(keys.begin(), keys.end());

        tries.emplace_back();
        std::map<std::string, node_id> at;
        for (const std::string& s : nodes) {  // prefixes come first
            REQUIRE(s.size() <= pc.alpha);    // single-window fixture
            const node_id v = arena.create();
            arena[v].extent = {text.append(s), uint32_t(s.size())};
            at[s] = v;
            if (s.empty()) {
                root = v;
                arena[v].flags |= micro_node::kMicroRoot;
                tries[0].root = v;
                tries[0].d0 = 0;
                continue;
            }
            std::string p = s.substr(0, s.size() - 1);
            while (!at.count(p)) p.pop_back();
            const node_id pv = at[p];
            arena[v].parent = pv;
            arena[pv].children.insert(v, child_ops{env(), uint32_t(p.size())});
            tries[0].handles.insert(v, handle_ops{env(), 0});
        }
    }

    static size_t lcp_of(const std::string& a, const std::string& b) {
        size_t i = 0;
        while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
        return i;
    }

    // Ground truth by plain child-at-a-time descent from the root.
    exit_result naive_exit(packed_view q) {
        node_id cur = root;
        uint64_t g = 0;
        for (;;) {
            const micro_node& n = arena[cur];
            g += lcp(pc, q, g, text.view(n.extent), g);
            if (g < n.extent.len || g == q.len) break;
            const node_id c = n.children.find(char_at(pc, q, uint32_t(g) + 1),
                                              child_ops{env(), n.extent.len});
            if (c == node_none) break;
            cur = c;
        }
        exit_result r;
        r.exit = cur;
        r.parex = arena[cur].parent;
        r.g = uint32_t(g);
        return r;
    }

    void check_query(const std::string& qs) {
        const packed_query pq(pc, qs);
        const exit_result want = naive_exit(pq.view());
        const exit_result got = micro_exit(env(), tries[0], pq.view());
        CAPTURE(qs);
        REQUIRE(got.exit == want.exit);
        REQUIRE(got.parex == want.parex);
        REQUIRE(got.g == want.g);
        REQUIRE(got.handle_probes <= 5);  // ceil(lg(alpha + 1)) + 1
        REQUIRE(got.child_probes <= 2);
    }
};

}  // namespace

TEST_CASE("handle keys take the 2-fattest cut of the edge") {
    fixture f({"brauen"});
    const handle_ops ho{f.env(), 0};
    // single leaf below the root: edge [1, 6], cut at two_fattest = 4
    const node_id leaf =
        f.arena[f.root].children.min_entry(child_ops{f.env(), 0});
    const suffix_key k = ho.key_of(leaf);
    REQUIRE(k.len == 4);
    REQUIRE(k.bits == (uint64_t('b') | uint64_t('r') << 8 |
                       uint64_t('a') << 16 | uint64_t('u') << 24));
    REQUIRE(f.tries[0].handles.find(k, ho) == leaf);
}

TEST_CASE("searches settle on the naive exit for a fixed shape") {
    fixture f({"a", "ab", "abcdefgh", "abd", "b", "bcd", "bce", "h"});
    for (const std::string& q :
         {"", "a", "ab", "abc", "abcdefgh", "abcdefgx", "abd", "abde", "ax",
          "b", "bc", "bcd", "bce", "bcf", "bx", "c", "h", "ha", "zzzz",
          "abcdefghlonger"}) {
        f.check_query(q);
    }
}

TEST_CASE("exit matches naive descent over dense random tries") {
    uint64_t s = 777;
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<std::string> keys;
        const int n = 2 + int(splitmix64(s) % 40);
        for (int i = 0; i < n; ++i) {
            std::string k;
            const int len = 1 + int(splitmix64(s) % 8);
            for (int j = 0; j < len; ++j)
                k += char('a' + splitmix64(s) % 2);
            keys.push_back(k);
        }
        fixture f(keys);
        for (int q = 0; q < 300; ++q) {
            std::string qs;
            const int len = int(splitmix64(s) % 11);
            for (int j = 0; j < len; ++j)
                qs += char('a' + splitmix64(s) % 3);
            f.check_query(qs);
        }
    }
}

TEST_CASE("probe counts stay logarithmic in the window") {
    trie_counters::reset();
    std::vector<std::string> keys;
    uint64_t s = 4242;
    for (int i = 0; i < 200; ++i) {
        std::string k;
        const int len = 1 + int(splitmix64(s) % 8);
        for (int j = 0; j < len; ++j) k += char('a' + splitmix64(s) % 4);
        keys.push_back(k);
    }
    fixture f(keys);
    for (int q = 0; q < 2000; ++q) {
        std::string qs;
        const int len = int(splitmix64(s) % 10);
        for (int j = 0; j < len; ++j) qs += char('a' + splitmix64(s) % 5);
        f.check_query(qs);
    }
    REQUIRE(trie_counters::searches == 2000);
    REQUIRE(trie_counters::max_handle_probes <= 5);
    REQUIRE(trie_counters::max_child_probes <= 2);
    // the binary search must actually cut: far fewer probes than depths tried
    REQUIRE(trie_counters::handle_probes <= trie_counters::searches * 5);
}

TEST_CASE("queries that stop at the root report it as exit") {
    fixture f({"abc", "abd"});
    const packed_query pq(f.pc, "x");
    const exit_result er = micro_exit(f.env(), f.tries[0], pq.view());
    REQUIRE(er.exit == f.root);
    REQUIRE(er.parex == node_none);
    REQUIRE(er.g == 0);
}
