#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "micro_trie.hpp"

namespace ctriepp {

struct dictionary_config {
    uint32_t sigma = 256;
    dict_config dict;
};

// Space accounting in bits. Payload is the packed character data; everything
// else is auxiliary structure.
struct space_report {
    uint64_t keywords = 0;
    uint64_t arena_nodes = 0;     // live nodes, window anchors included
    uint64_t abstract_nodes = 0;  // arena nodes minus pass-through anchors
    uint64_t tries = 0;
    uint64_t text_payload_bits = 0;
    uint64_t text_overhead_bits = 0;
    uint64_t node_bits = 0;
    uint64_t child_bits = 0;
    uint64_t handle_bits = 0;
    uint64_t macro_bits = 0;
    uint64_t registry_bits = 0;

    uint64_t aux_bits() const {
        return text_overhead_bits + node_bits + child_bits + handle_bits +
               macro_bits + registry_bits;
    }
    uint64_t total_bits() const { return text_payload_bits + aux_bits(); }
};

class keyword_dictionary;

// Lazy ascending iteration over the keywords below one prefix. Valid only
// while the dictionary is not mutated.
class prefix_cursor {
public:
    prefix_cursor() = default;

    uint32_t next();  // keyword id, 0 once exhausted

private:
    friend class keyword_dictionary;

    struct frame {
        node_id node = node_none;
        std::vector<node_id> kids;
        size_t idx = 0;
        bool self_done = false;
    };

    const keyword_dictionary* owner_ = nullptr;
    std::vector<frame> stack_;
};

// Ordered dictionary over byte strings. Keywords get increasing ids from 1;
// ids are never reused. The structure is a compact trie whose nodes reference
// prefixes of an append-only packed store, cut into depth windows of alpha
// characters: each window is a small trie searched by hashed handles, and
// full windows are skipped via one global link table keyed by (trie, word).
class keyword_dictionary {
public:
    explicit keyword_dictionary(dictionary_config cfg = {})
        : pc_(cfg.sigma), dcfg_(cfg.dict), fam_(cfg.dict), text_(pc_) {
        dcfg_.validate();
        text_.append(std::string_view{});  // text 0 backs the root's empty extent
        root_ = arena_.create();
        arena_[root_].extent = {0, 0};
        arena_[root_].flags |= micro_node::kMicroRoot;
        tries_.push_back(micro_trie{root_, 0, trie_none, {}});
    }

    const pack_config& pack() const { return pc_; }
    uint32_t size() const { return live_keywords_; }
    uint32_t max_id() const { return uint32_t(registry_.size()); }
    node_id root() const { return root_; }
    const node_arena& nodes() const { return arena_; }
    const packed_text& text() const { return text_; }

    // Adds a keyword and returns its id. Inserting a string that is already
    // present is a no-op that returns the existing id.
    uint32_t insert(std::string_view bytes) {
        const packed_query pq(pc_, bytes);
        const packed_view q = pq.view();
        const trie_id tid = macro_descend(q);
        const exit_result er = micro_exit(env(), tries_[tid], q);
        const uint32_t elen = arena_[er.exit].extent.len;

        if (er.g == q.len && er.g == elen) {
            if (arena_[er.exit].keyword) return arena_[er.exit].keyword;
            return attach_id(er.exit);
        }

        if (er.g == elen) {  // diverges below the exit node; grow a new branch
            const uint32_t txt = text_.append(bytes);
            const trie_id owner = child_owner(er.exit, tid);
            return extend_below(er.exit, owner, txt, q.len);
        }

        // er.g < elen: the string leaves the exit edge inside the window;
        // split it with a branch node at depth g.
        const node_id b = split_edge(er, tid);
        if (er.g == q.len) return attach_id(b);
        const uint32_t txt = text_.append(bytes);
        return extend_below(b, tid, txt, q.len);
    }

    // Id of the exact keyword, 0 when absent.
    uint32_t locate(std::string_view bytes) const {
        const packed_query pq(pc_, bytes);
        const packed_view q = pq.view();
        const trie_id tid = macro_descend(q);
        const exit_result er = micro_exit(env(), tries_[tid], q);
        if (er.g != q.len || er.g != arena_[er.exit].extent.len) return 0;
        return arena_[er.exit].keyword;
    }

    bool contains(std::string_view bytes) const { return locate(bytes) != 0; }

    // Removes a keyword; returns its id. Throws not_a_keyword when absent.
    uint32_t erase(std::string_view bytes) {
        const packed_query pq(pc_, bytes);
        const packed_view q = pq.view();
        const std::vector<trie_id> chain = macro_chain(q);
        const exit_result er = micro_exit(env(), tries_[chain.back()], q);
        node_id v = er.exit;
        if (er.g != q.len || er.g != arena_[v].extent.len || !arena_[v].keyword)
            throw not_a_keyword("erase: no such keyword");
        const uint32_t id = arena_[v].keyword;
        arena_[v].keyword = 0;
        registry_[id - 1] = node_none;
        --live_keywords_;
        cleanup(v, chain);
        return id;
    }

    // Largest keyword strictly before q (or equal, when or_equal). 0 if none.
    uint32_t predecessor(std::string_view bytes, bool or_equal = false) const {
        return ordered_neighbor(bytes, true, or_equal);
    }

    // Smallest keyword strictly after q (or equal, when or_equal). 0 if none.
    uint32_t successor(std::string_view bytes, bool or_equal = false) const {
        return ordered_neighbor(bytes, false, or_equal);
    }

    // Keywords extending the prefix, ascending.
    prefix_cursor locate_prefix(std::string_view prefix) const {
        const packed_query pq(pc_, prefix);
        const packed_view q = pq.view();
        const trie_id tid = macro_descend(q);
        const exit_result er = micro_exit(env(), tries_[tid], q);
        prefix_cursor cur;
        cur.owner_ = this;
        if (er.g == q.len) push_frame(cur, er.exit);
        return cur;
    }

    std::vector<uint32_t> locate_prefix_all(std::string_view prefix) const {
        std::vector<uint32_t> out;
        prefix_cursor cur = locate_prefix(prefix);
        for (uint32_t id = cur.next(); id != 0; id = cur.next())
            out.push_back(id);
        return out;
    }

    // Bytes of a live keyword.
    std::string keyword(uint32_t id) const {
        if (id == 0 || id > registry_.size() || registry_[id - 1] == node_none)
            throw not_a_keyword("keyword: id is not live");
        const micro_node& n = arena_[registry_[id - 1]];
        std::string out(n.extent.len, '\0');
        for (uint32_t i = 1; i <= n.extent.len; ++i)
            out[i - 1] = char(text_.char_at(n.extent, i));
        return out;
    }

    space_report space() const {
        space_report r;
        r.keywords = live_keywords_;
        r.arena_nodes = arena_.live_count();
        r.text_payload_bits = text_.payload_bits();
        r.text_overhead_bits = text_.overhead_bits();
        r.node_bits = arena_.footprint_bytes() * 8;
        r.registry_bits = registry_.capacity() * sizeof(node_id) * 8;
        visit_live([&](node_id v) {
            const micro_node& n = arena_[v];
            r.child_bits += n.children.footprint_bytes() * 8;
            if (!pass_through_anchor(n)) ++r.abstract_nodes;
        });
        for (const micro_trie& t : tries_)
            if (t.root != node_none) {
                ++r.tries;
                r.handle_bits += (t.handles.footprint_bytes() + sizeof(micro_trie)) * 8;
            }
        r.handle_bits += trie_free_.capacity() * sizeof(trie_id) * 8 +
                         sizeof(micro_trie) * 8 * (tries_.size() - r.tries);
        r.macro_bits = macro_links_.footprint_bytes() * 8;
        return r;
    }

    // Nodes a plain compact trie over the live keywords would have. Window
    // anchors that only pass one edge through a depth boundary are ignored.
    uint64_t abstract_node_count() const {
        uint64_t n = 0;
        visit_live([&](node_id v) {
            if (!pass_through_anchor(arena_[v])) ++n;
        });
        return n;
    }

    uint32_t trie_count() const {
        uint32_t n = 0;
        for (const micro_trie& t : tries_)
            if (t.root != node_none) ++n;
        return n;
    }

    struct node_stats {
        uint32_t depth = 0;
        uint32_t children = 0;
        bool keyword = false;
        bool window_root = false;
        bool abstract_node = false;
    };

    template <class F>
    void for_each_node(F&& f) const {
        visit_live([&](node_id v) {
            const micro_node& n = arena_[v];
            f(node_stats{n.extent.len, n.children.size(), n.keyword != 0,
                         n.is_micro_root(), !pass_through_anchor(n)});
        });
    }

    // f(window depth, handle table size) per live window trie.
    template <class F>
    void for_each_trie(F&& f) const {
        for (const micro_trie& t : tries_)
            if (t.root != node_none) f(t.d0, t.handles.size());
    }

    // Shape fingerprint, insensitive to insertion order and id assignment:
    // depth, branching character, keyword presence and window-root flag of
    // every node in ascending child order.
    std::string structure_signature() const {
        std::string out;
        std::vector<std::pair<node_id, uint32_t>> stack{{root_, 0}};
        while (!stack.empty()) {
            const auto [v, branch] = stack.back();
            stack.pop_back();
            if (v == node_none) {  // close marker
                out += ')';
                continue;
            }
            const micro_node& n = arena_[v];
            out += '(';
            out += std::to_string(n.extent.len);
            out += ':';
            out += std::to_string(branch);
            out += n.keyword ? ":k" : ":-";
            out += n.is_micro_root() ? "w" : "-";
            stack.push_back({node_none, 0});
            const child_ops co{env(), n.extent.len};
            const std::vector<node_id> kids = n.children.sorted_entries(co);
            for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                stack.push_back({*it, co.key_of(*it)});
        }
        return out;
    }

    // Full invariant sweep; throws ctriepp::error on the first violation.
    void audit() const {
        uint64_t seen_nodes = 0;
        uint64_t seen_keywords = 0;
        std::vector<std::pair<node_id, trie_id>> stack{{root_, 0}};
        std::vector<char> trie_seen(tries_.size(), 0);

        if (tries_.empty() || tries_[0].root != root_ || tries_[0].d0 != 0)
            throw error("audit: trie 0 must anchor the global root");

        while (!stack.empty()) {
            const auto [v, home] = stack.back();
            stack.pop_back();
            ++seen_nodes;
            const micro_node& n = arena_[v];
            const uint32_t len = n.extent.len;

            if (n.keyword) {
                ++seen_keywords;
                if (n.keyword > registry_.size() ||
                    registry_[n.keyword - 1] != v)
                    throw error("audit: keyword id does not map back");
            }

            trie_id below = home;  // trie owning v's children
            if (n.is_micro_root()) {
                below = find_trie(v);
                if (below == trie_none || len % pc_.alpha != 0)
                    throw error("audit: window-root flag without a trie");
                if (tries_[below].parent_trie != (v == root_ ? trie_none : home))
                    throw error("audit: trie parent mismatch");
                trie_seen[below] = 1;
                if (v != root_) {
                    const macro_ops mo{env(), &tries_};
                    if (macro_links_.find(mo.key_of(below), mo) != below)
                        throw error("audit: missing or wrong macro link");
                }
            } else if (len % pc_.alpha == 0 && !n.children.empty() && v != root_) {
                throw error("audit: boundary node with children lacks flag");
            }

            const uint32_t nc = n.children.size();
            if (nc == 0 && !n.keyword && v != root_)
                throw error("audit: bare leaf without keyword");
            if (nc == 1 && !n.keyword && !n.is_micro_root() && v != root_)
                throw error("audit: pass-through node outside a boundary");

            const child_ops co{env(), len};
            uint32_t prev_key = 0;
            bool first = true;
            for (node_id c : n.children.sorted_entries(co)) {
                const micro_node& cn = arena_[c];
                if (cn.parent != v) throw error("audit: child parent link broken");
                if (cn.extent.len <= len) throw error("audit: child not deeper");
                if (cn.extent.len > len + pc_.alpha ||
                    (cn.extent.len - 1) / pc_.alpha * pc_.alpha > len)
                    throw error("audit: edge skips a window boundary");
                if (text_.lcp(cn.extent, 0, n.extent, 0) < len)
                    throw error("audit: child extent does not extend parent");
                const uint32_t key = co.key_of(c);
                if (!first && key <= prev_key)
                    throw error("audit: child keys not strictly ascending");
                prev_key = key;
                first = false;
                if (cn.extent.len <= tries_[below].d0 ||
                    cn.extent.len > tries_[below].d0 + pc_.alpha)
                    throw error("audit: child outside owner window");
                const handle_ops ho{env(), tries_[below].d0};
                if (tries_[below].handles.find(ho.key_of(c), ho) != c)
                    throw error("audit: handle lookup does not return node");
                stack.push_back({c, below});
            }
        }

        if (seen_nodes != arena_.live_count())
            throw error("audit: arena live count mismatch");
        if (seen_keywords != live_keywords_)
            throw error("audit: keyword count mismatch");
        uint64_t handle_total = 0, member_total = 0;
        for (trie_id t = 0; t < tries_.size(); ++t) {
            const micro_trie& mt = tries_[t];
            if (mt.root == node_none) continue;
            if (!trie_seen[t]) throw error("audit: orphaned trie record");
            handle_total += mt.handles.size();
        }
        member_total = seen_nodes - 1;  // every node but the global root
        if (handle_total != member_total)
            throw error("audit: handle table sizes do not cover members");
        if (macro_links_.size() != trie_count() - 1)
            throw error("audit: macro link count mismatch");
    }

private:
    friend class prefix_cursor;

    trie_env env() const {
        return {&pc_, &text_, const_cast<node_arena*>(&arena_), &fam_, &dcfg_};
    }

    // Deepest trie whose window q fully covers and whose link word matches.
    trie_id macro_descend(packed_view q) const {
        trie_id tid = 0;
        uint32_t steps = 0;
        const macro_ops mo{env(), &tries_};
        while (q.len >= tries_[tid].d0 + pc_.alpha) {
            const macro_key k{tid, window_word(pc_, q, tries_[tid].d0, pc_.alpha)};
            const node_id c = macro_links_.find(k, mo);
            if (c == node_none) break;
            tid = trie_id(c);
            ++steps;
        }
        trie_counters::record_descent(steps, q.len, pc_.alpha);
        return tid;
    }

    std::vector<trie_id> macro_chain(packed_view q) const {
        std::vector<trie_id> chain{0};
        const macro_ops mo{env(), &tries_};
        while (q.len >= tries_[chain.back()].d0 + pc_.alpha) {
            const micro_trie& t = tries_[chain.back()];
            const macro_key k{chain.back(), window_word(pc_, q, t.d0, pc_.alpha)};
            const node_id c = macro_links_.find(k, mo);
            if (c == node_none) break;
            chain.push_back(trie_id(c));
        }
        trie_counters::record_descent(uint32_t(chain.size() - 1), q.len,
                                      pc_.alpha);
        return chain;
    }

    uint32_t attach_id(node_id v) {
        if (registry_.size() == 0xFFFFFFFEull)
            throw arena_full("insert: keyword id space exhausted");
        registry_.push_back(v);
        arena_[v].keyword = uint32_t(registry_.size());
        ++live_keywords_;
        return arena_[v].keyword;
    }

    // Trie that owns children of `v`, creating a window trie when a leaf
    // sitting exactly on a boundary gains its first child. `home` owns v.
    trie_id child_owner(node_id v, trie_id home) {
        const uint32_t len = arena_[v].extent.len;
        if (len % pc_.alpha != 0) return home;
        if (v == tries_[home].root) return home;
        if (arena_[v].is_micro_root()) {  // late arrival at an existing window
            const trie_id t = find_trie(v);
            if (t != trie_none) return t;
        }
        return create_trie(v, home);  // boundary leaf becomes a window root
    }

    trie_id create_trie(node_id root, trie_id parent) {
        trie_id tid;
        if (!trie_free_.empty()) {
            tid = trie_free_.back();
            trie_free_.pop_back();
        } else {
            tid = trie_id(tries_.size());
            tries_.push_back({});
        }
        tries_[tid] = micro_trie{root, arena_[root].extent.len, parent, {}};
        arena_[root].flags |= micro_node::kMicroRoot;
        const macro_ops mo{env(), &tries_};
        macro_links_.insert(tid, mo);
        return tid;
    }

    void destroy_trie(trie_id tid) {
        const macro_ops mo{env(), &tries_};
        if (macro_links_.remove(mo.key_of(tid), mo) == node_none)
            throw error("destroy_trie: macro link missing");
        assert(tries_[tid].handles.empty());
        arena_[tries_[tid].root].flags &= uint8_t(~micro_node::kMicroRoot);
        tries_[tid] = micro_trie{};
        trie_free_.push_back(tid);
    }

    // Hangs the rest of `txt` below `v`, materializing an anchor node on
    // every window boundary the new edge crosses. Returns the keyword id of
    // the final leaf.
    uint32_t extend_below(node_id v, trie_id owner, uint32_t txt, uint32_t m) {
        node_id cur = v;
        trie_id cur_owner = owner;
        for (;;) {
            const uint32_t cur_len = arena_[cur].extent.len;
            const uint32_t boundary = (cur_len / pc_.alpha + 1) * pc_.alpha;
            const bool last = m <= boundary;
            const uint32_t depth = last ? m : boundary;

            const node_id child = arena_.create();
            arena_[child].extent = {txt, depth};
            arena_[child].parent = cur;
            arena_[cur].children.insert(child, child_ops{env(), cur_len});
            tries_[cur_owner].handles.insert(
                child, handle_ops{env(), tries_[cur_owner].d0});
            if (last) return attach_id(child);
            cur_owner = create_trie(child, cur_owner);
            cur = child;
        }
    }

    // Splits the exit edge at depth g with a fresh branch node. Handle order
    // matters: the exit's old handle is keyed against its old parent, so it
    // comes out before the edge is rewired.
    node_id split_edge(const exit_result& er, trie_id tid) {
        micro_trie& t = tries_[tid];
        const handle_ops ho{env(), t.d0};
        const node_id u = er.parex;
        const node_id e = er.exit;
        const uint32_t ulen = arena_[u].extent.len;

        const node_id b = arena_.create();
        arena_[b].extent = {arena_[e].extent.text, er.g};
        arena_[b].parent = u;

        if (t.handles.remove(ho.key_of(e), ho) != e)
            throw error("split_edge: stale handle for exit node");
        arena_[e].parent = b;
        arena_[b].children.insert(e, child_ops{env(), er.g});
        arena_[u].children.replace(text_.char_at(arena_[b].extent, ulen + 1), b,
                                   child_ops{env(), ulen});
        t.handles.insert(b, ho);
        t.handles.insert(e, ho);
        return b;
    }

    // After a keyword is cleared at v, removes nodes that no longer carry
    // information: childless nodes vanish (dissolving their window trie if
    // they anchored one) and the walk climbs; a keyword-free node left with
    // one child merges with it unless it anchors a window.
    void cleanup(node_id v, const std::vector<trie_id>& chain) {
        for (;;) {
            micro_node& n = arena_[v];
            const uint32_t nc = n.children.size();
            // A window trie dies with its last member, even when its root
            // node itself survives as a keyword.
            if (nc == 0 && n.is_micro_root() && v != root_)
                destroy_trie(chain_trie_at(n.extent.len, chain, v));
            if (n.keyword || v == root_) return;
            if (nc >= 2) return;
            if (nc == 1) {
                if (n.is_micro_root()) return;  // anchor still passes an edge through
                merge_with_child(v, owner_of(n.extent.len, chain));
                return;
            }
            const node_id p = n.parent;
            const trie_id owner = owner_of(n.extent.len, chain);
            const handle_ops ho{env(), tries_[owner].d0};
            if (tries_[owner].handles.remove(ho.key_of(v), ho) != v)
                throw error("cleanup: stale handle for removed leaf");
            const uint32_t plen = arena_[p].extent.len;
            arena_[p].children.remove(text_.char_at(n.extent, plen + 1),
                                      child_ops{env(), plen});
            arena_.destroy(v);
            v = p;
        }
    }

    // v has exactly one child, no keyword and no window flag: splice it out.
    // Both nodes sit inside one window, so only that trie's handles move.
    void merge_with_child(node_id v, trie_id owner) {
        const handle_ops ho{env(), tries_[owner].d0};
        const child_ops vo{env(), arena_[v].extent.len};
        const node_id c = arena_[v].children.min_entry(vo);
        if (tries_[owner].handles.remove(ho.key_of(c), ho) != c)
            throw error("merge: stale handle for child");
        if (tries_[owner].handles.remove(ho.key_of(v), ho) != v)
            throw error("merge: stale handle for merged node");
        const node_id p = arena_[v].parent;
        const uint32_t plen = arena_[p].extent.len;
        arena_[c].parent = p;
        arena_[p].children.replace(text_.char_at(arena_[v].extent, plen + 1), c,
                                   child_ops{env(), plen});
        arena_.destroy(v);
        tries_[owner].handles.insert(c, ho);
    }

    // Trie owning a node of the given depth, read off the descent chain.
    trie_id owner_of(uint32_t depth, const std::vector<trie_id>& chain) const {
        return chain[(depth - 1) / pc_.alpha];
    }

    trie_id chain_trie_at(uint32_t depth, const std::vector<trie_id>& chain,
                          node_id expected_root) const {
        const trie_id t = chain[depth / pc_.alpha];
        if (tries_[t].root != expected_root)
            throw error("cleanup: descent chain does not cover trie");
        return t;
    }

    trie_id find_trie(node_id root) const {
        for (trie_id t = 0; t < tries_.size(); ++t)
            if (tries_[t].root == root) return t;
        return trie_none;
    }

    uint32_t ordered_neighbor(std::string_view bytes, bool pred,
                              bool or_equal) const {
        const packed_query pq(pc_, bytes);
        const packed_view q = pq.view();
        const trie_id tid = macro_descend(q);
        const exit_result er = micro_exit(env(), tries_[tid], q);
        const node_id e = er.exit;
        const uint32_t elen = arena_[e].extent.len;

        if (er.g == q.len && er.g == elen) {  // q sits exactly on a node
            if (or_equal && arena_[e].keyword) return arena_[e].keyword;
            if (pred) return climb_pred(e);
            const child_ops co{env(), elen};
            const node_id c = arena_[e].children.min_entry(co);
            return c != node_none ? subtree_min(c) : climb_succ(e);
        }

        if (er.g < q.len && er.g == elen) {  // q branches off between children
            const uint32_t ch = char_at(pc_, q, er.g + 1);
            const child_ops co{env(), elen};
            if (pred) {
                const node_id sib = arena_[e].children.predecessor(ch, co);
                if (sib != node_none) return subtree_max(sib);
                if (arena_[e].keyword) return arena_[e].keyword;
                return climb_pred(e);
            }
            const node_id sib = arena_[e].children.successor(ch, co);
            return sib != node_none ? subtree_min(sib) : climb_succ(e);
        }

        // q parts ways inside the exit edge; everything below e sits on one
        // side of q.
        const bool subtree_greater =
            er.g == q.len ||
            char_at(pc_, q, er.g + 1) <
                text_.char_at(arena_[e].extent, er.g + 1);
        if (subtree_greater) return pred ? climb_pred(e) : subtree_min(e);
        return pred ? subtree_max(e) : climb_succ(e);
    }

    // Largest keyword left of v's subtree: nearest smaller sibling's maximum,
    // else the first ancestor that is itself a keyword (a proper prefix
    // always orders first).
    uint32_t climb_pred(node_id v) const {
        while (v != root_) {
            const node_id p = arena_[v].parent;
            const uint32_t plen = arena_[p].extent.len;
            const child_ops co{env(), plen};
            const node_id sib = arena_[p].children.predecessor(
                text_.char_at(arena_[v].extent, plen + 1), co);
            if (sib != node_none) return subtree_max(sib);
            if (arena_[p].keyword) return arena_[p].keyword;
            v = p;
        }
        return 0;
    }

    uint32_t climb_succ(node_id v) const {
        while (v != root_) {
            const node_id p = arena_[v].parent;
            const uint32_t plen = arena_[p].extent.len;
            const child_ops co{env(), plen};
            const node_id sib = arena_[p].children.successor(
                text_.char_at(arena_[v].extent, plen + 1), co);
            if (sib != node_none) return subtree_min(sib);
            v = p;
        }
        return 0;
    }

    // A node's own keyword precedes everything deeper, so the minimum is the
    // shallowest keyword on the min-child path and the maximum ends at a leaf.
    uint32_t subtree_min(node_id v) const {
        for (;;) {
            const micro_node& n = arena_[v];
            if (n.keyword) return n.keyword;
            v = n.children.min_entry(child_ops{env(), n.extent.len});
            if (v == node_none) throw error("subtree_min: keywordless leaf");
        }
    }

    uint32_t subtree_max(node_id v) const {
        for (;;) {
            const micro_node& n = arena_[v];
            const node_id c = n.children.max_entry(child_ops{env(), n.extent.len});
            if (c == node_none) {
                if (!n.keyword) throw error("subtree_max: keywordless leaf");
                return n.keyword;
            }
            v = c;
        }
    }

    void push_frame(prefix_cursor& cur, node_id v) const {
        const micro_node& n = arena_[v];
        prefix_cursor::frame f;
        f.node = v;
        f.kids = n.children.sorted_entries(child_ops{env(), n.extent.len});
        cur.stack_.push_back(std::move(f));
    }

    // Pass-through anchors exist only to pin a window root onto a long edge;
    // a plain compact trie would not have them.
    bool pass_through_anchor(const micro_node& n) const {
        return n.is_micro_root() && !n.keyword && n.children.size() == 1 &&
               n.extent.len > 0;
    }

    template <class F>
    void visit_live(F&& f) const {
        std::vector<node_id> stack{root_};
        while (!stack.empty()) {
            const node_id v = stack.back();
            stack.pop_back();
            f(v);
            arena_[v].children.for_each([&](node_id c) { stack.push_back(c); });
        }
    }

    pack_config pc_;
    dict_config dcfg_;
    hash_family fam_;
    packed_text text_;
    node_arena arena_;
    node_id root_ = node_none;
    std::vector<micro_trie> tries_;
    std::vector<trie_id> trie_free_;
    cuckoo_dict macro_links_;
    std::vector<node_id> registry_;  // id-1 -> node, node_none after erase
    uint32_t live_keywords_ = 0;
};

inline uint32_t prefix_cursor::next() {
    while (!stack_.empty()) {
        frame& f = stack_.back();
        if (!f.self_done) {
            f.self_done = true;
            const uint32_t kw = owner_->arena_[f.node].keyword;
            if (kw) return kw;
        }
        if (f.idx < f.kids.size()) {
            owner_->push_frame(*this, f.kids[f.idx++]);
            continue;
        }
        stack_.pop_back();
    }
    return 0;
}

}  // namespace ctriepp
