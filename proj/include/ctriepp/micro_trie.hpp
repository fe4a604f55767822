#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "arena.hpp"

namespace ctriepp {

using trie_id = uint32_t;
inline constexpr trie_id trie_none = 0xFFFFFFFFu;

// One window trie. Nodes whose depth lies in (d0, d0 + alpha] live here; the
// root is the node of depth d0 that anchors the window (it is itself a member
// of the window above). `handles` maps each member's handle suffix to it.
struct micro_trie {
    node_id root = node_none;
    uint32_t d0 = 0;           // depth of the root; multiple of alpha
    trie_id parent_trie = trie_none;
    cuckoo_dict handles;
};

// Handle suffix of a member node: the characters (d0, f] of its extent, where
// f is the 2-fattest number of the node's edge interval. Both ends lie inside
// the window, so the suffix packs into one word.
struct suffix_key {
    uint64_t bits = 0;
    uint32_t len = 0;  // characters, 1..alpha

    friend bool operator==(const suffix_key&, const suffix_key&) = default;
};

// Key of a macro link: the source trie plus one full window of characters.
struct macro_key {
    trie_id parent = trie_none;
    uint64_t word = 0;

    friend bool operator==(const macro_key&, const macro_key&) = default;
};

// Shared plumbing handed to every dictionary Ops object.
struct trie_env {
    const pack_config* pc = nullptr;
    const packed_text* text = nullptr;
    node_arena* arena = nullptr;
    const hash_family* fam = nullptr;
    const dict_config* dcfg = nullptr;
};

// Children are keyed by the first character past the parent's depth. Keys are
// recomputed from extents, so reparenting a child keeps its key only when the
// branching character is unchanged.
struct child_ops {
    using key_type = uint32_t;

    trie_env env;
    uint32_t parent_len = 0;

    key_type key_of(node_id v) const {
        const micro_node& n = (*env.arena)[v];
        return env.text->char_at(n.extent, parent_len + 1);
    }
    uint64_t prehash(const key_type& k) const { return k; }
    bool equal(const key_type& a, const key_type& b) const { return a == b; }
    bool less(const key_type& a, const key_type& b) const { return a < b; }
    const hash_family& family() const { return *env.fam; }
    const dict_config& config() const { return *env.dcfg; }
};

struct handle_ops {
    using key_type = suffix_key;

    trie_env env;
    uint32_t d0 = 0;

    key_type key_of(node_id v) const {
        const micro_node& n = (*env.arena)[v];
        const uint32_t plen = (*env.arena)[n.parent].extent.len;
        const uint32_t f = uint32_t(two_fattest(plen + 1, n.extent.len));
        return {env.text->window_word(n.extent, d0, f - d0), f - d0};
    }
    uint64_t prehash(const key_type& k) const {
        return k.bits ^ (uint64_t(k.len) * 0x9E3779B97F4A7C15ull);
    }
    bool equal(const key_type& a, const key_type& b) const { return a == b; }
    const hash_family& family() const { return *env.fam; }
    const dict_config& config() const { return *env.dcfg; }
};

// Macro links store trie ids; a link's key is recomputed from the target
// trie's record: its parent trie plus the window of characters that leads
// from the parent trie's root depth down to the target's root depth.
struct macro_ops {
    using key_type = macro_key;

    trie_env env;
    const std::vector<micro_trie>* tries = nullptr;

    key_type key_of(node_id v) const {
        const micro_trie& t = (*tries)[v];
        const micro_node& rn = (*env.arena)[t.root];
        const uint32_t alpha = env.pc->alpha;
        return {t.parent_trie,
                env.text->window_word(rn.extent, t.d0 - alpha, alpha)};
    }
    uint64_t prehash(const key_type& k) const {
        return k.word ^ (uint64_t(k.parent) * 0xC2B2AE3D27D4EB4Full);
    }
    bool equal(const key_type& a, const key_type& b) const { return a == b; }
    const hash_family& family() const { return *env.fam; }
    const dict_config& config() const { return *env.dcfg; }
};

// Where a query string leaves one window trie. `exit` is the deepest node
// whose extent meets the query in more than the parent's depth; `parex` its
// parent (node_none when exit is the global root); g the matched length.
struct exit_result {
    node_id parex = node_none;
    node_id exit = node_none;
    uint32_t g = 0;
    uint32_t handle_probes = 0;
    uint32_t child_probes = 0;
};

// Search instrumentation; cleared by tests around measured runs.
struct trie_counters {
    static inline uint64_t searches = 0;
    static inline uint64_t handle_probes = 0;
    static inline uint64_t child_probes = 0;
    static inline uint32_t max_handle_probes = 0;
    static inline uint32_t max_child_probes = 0;
    static inline uint64_t descents = 0;
    static inline uint64_t link_steps = 0;
    // max over descents of steps * alpha - |q|; <= 0 iff every query visited
    // at most floor(|q| / alpha) + 1 window tries
    static inline int64_t max_link_slack = INT64_MIN;

    static void reset() {
        searches = handle_probes = child_probes = 0;
        max_handle_probes = max_child_probes = 0;
        descents = link_steps = 0;
        max_link_slack = INT64_MIN;
    }

    static void record(const exit_result& r) {
        ++searches;
        handle_probes += r.handle_probes;
        child_probes += r.child_probes;
        max_handle_probes = std::max(max_handle_probes, r.handle_probes);
        max_child_probes = std::max(max_child_probes, r.child_probes);
    }

    static void record_descent(uint32_t steps, uint64_t qlen, uint32_t alpha) {
        ++descents;
        link_steps += steps;
        max_link_slack = std::max(
            max_link_slack, int64_t(uint64_t(steps) * alpha) - int64_t(qlen));
    }
};

// Fat binary search over the window (d0, min(|q|, d0 + alpha)].
//
// Precondition: |q| >= d0 and q agrees with the root's extent on its first
// d0 characters. The search maintains a window (l, r) known to contain the
// exit depth and probes the handle table at the 2-fattest depth inside it.
// A probe hit is verified by construction: handle keys compare by value, so
// a returned node's extent agrees with q up to the probed depth, which makes
// the node an ancestor of (or equal to) the exit node. A final walk-down by
// child character settles the exact exit; it descends at most twice.
inline exit_result micro_exit(const trie_env& env, const micro_trie& t,
                              packed_view q) {
    const pack_config& pc = *env.pc;
    const node_arena& arena = *env.arena;
    exit_result out;

    const uint32_t d0 = t.d0;
    node_id best = t.root;
    uint32_t l = d0;
    uint32_t r = std::min(q.len, d0 + pc.alpha) + 1;
    const handle_ops hops{env, d0};

    while (r - l > 1) {
        const uint32_t f = uint32_t(two_fattest(l + 1, r - 1));
        const suffix_key k{window_word(pc, q, d0, f - d0), f - d0};
        ++out.handle_probes;
        const node_id w = t.handles.find(k, hops);
        if (w != node_none) {
            best = w;
            l = std::min(arena[w].extent.len, r - 1);
        } else {
            r = f;
        }
    }

    // best's extent is a prefix of q up to at least l; extend the match and
    // step through matching children until q diverges.
    uint64_t c = d0 + lcp(pc, q, d0, env.text->view(arena[best].extent), d0);
    for (;;) {
        const micro_node& bn = arena[best];
        if (c == bn.extent.len && c < q.len) {
            const uint32_t ch = char_at(pc, q, c + 1);
            ++out.child_probes;
            const node_id w =
                bn.children.find(ch, child_ops{env, bn.extent.len});
            if (w != node_none) {
                c += lcp(pc, q, c, env.text->view(arena[w].extent), c);
                best = w;
                continue;
            }
        }
        break;
    }

    out.exit = best;
    out.parex = arena[best].parent;
    out.g = uint32_t(c);
    trie_counters::record(out);
    return out;
}

}  // namespace ctriepp
