#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "adaptive_dict.hpp"
#include "errors.hpp"
#include "packed_text.hpp"

namespace ctriepp {

// One trie node. The extent (root-to-node string) is a reference into the
// shared packed store; children are keyed by their first character past the
// node's depth. keyword == 0 means the node carries no dictionary entry.
struct micro_node {
    static constexpr uint8_t kMicroRoot = 1;  // roots a boundary-window trie

    extent_ref extent;
    node_id parent = node_none;
    uint32_t keyword = 0;
    adaptive_dict children;
    uint8_t flags = 0;

    bool is_micro_root() const { return flags & kMicroRoot; }
};

static_assert(sizeof(micro_node) <= 40, "node record must stay compact");

// Block-allocated node storage with index handles and a free list. Handles
// are stable; blocks are never released until the arena dies. When
// CTRIEPP_CHECKED is defined every handle carries a liveness parity that
// turns stale accesses into use_after_free instead of silent corruption.
class node_arena {
public:
    static constexpr uint32_t kBlockBits = 16;
    static constexpr uint32_t kBlockSize = uint32_t(1) << kBlockBits;

    node_id create() {
        node_id id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
            node_at(id) = micro_node{};
        } else {
            if (next_ == node_none)  // 0xFFFFFFFF is the null sentinel
                throw arena_full("node_arena: handle space exhausted");
            if (next_ == kBlockSize * blocks_.size()) {
                blocks_.push_back(std::make_unique<micro_node[]>(kBlockSize));
#ifdef CTRIEPP_CHECKED
                gen_.resize(gen_.size() + kBlockSize, 0);
#endif
            }
            id = next_++;
        }
#ifdef CTRIEPP_CHECKED
        ++gen_[id];  // even -> odd: live
#endif
        ++live_;
        return id;
    }

    void destroy(node_id id) {
        check_live(id);
#ifdef CTRIEPP_CHECKED
        ++gen_[id];  // odd -> even: dead
#endif
        node_at(id).children = adaptive_dict();  // drop child storage now
        free_.push_back(id);
        --live_;
    }

    micro_node& operator[](node_id id) {
        check_live(id);
        return node_at(id);
    }
    const micro_node& operator[](node_id id) const {
        check_live(id);
        return const_cast<node_arena*>(this)->node_at(id);
    }

    uint32_t live_count() const { return live_; }
    uint32_t slot_count() const { return next_; }

    bool is_live(node_id id) const {
        if (id >= next_) return false;
#ifdef CTRIEPP_CHECKED
        return (gen_[id] & 1) != 0;
#else
        return true;  // unchecked builds cannot distinguish freed slots
#endif
    }

    // Node records plus free-list bookkeeping, excluding child dict payloads.
    uint64_t footprint_bytes() const {
        return uint64_t(blocks_.size()) * kBlockSize * sizeof(micro_node) +
               free_.capacity() * sizeof(node_id);
    }

private:
    micro_node& node_at(node_id id) {
        return blocks_[id >> kBlockBits][id & (kBlockSize - 1)];
    }

    void check_live(node_id id) const {
        if (id >= next_)
            throw index_error("node_arena: handle out of range");
#ifdef CTRIEPP_CHECKED
        if ((gen_[id] & 1) == 0)
            throw use_after_free("node_arena: access to freed node");
#endif
    }

    std::vector<std::unique_ptr<micro_node[]>> blocks_;
    std::vector<node_id> free_;
    uint32_t next_ = 0;
    uint32_t live_ = 0;
#ifdef CTRIEPP_CHECKED
    std::vector<uint32_t> gen_;  // odd while the slot is live
#endif
};

}  // namespace ctriepp
