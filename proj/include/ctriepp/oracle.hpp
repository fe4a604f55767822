#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ctriepp {

// Sorted-vector dictionary with the same observable behavior as
// keyword_dictionary: ids count up from 1 in insertion order and are never
// reused. Linear-time on purpose; it is the ground truth in tests and the
// structural statistics backend, not a competitor.
class oracle_dict {
public:
    uint32_t insert(std::string_view key) {
        const auto it = lower(key);
        if (it != kv_.end() && it->first == key) return it->second;
        kv_.insert(it, {std::string(key), next_id_});
        return next_id_++;
    }

    uint32_t erase(std::string_view key) {
        const auto it = lower(key);
        if (it == kv_.end() || it->first != key)
            throw not_a_keyword("oracle erase: no such keyword");
        const uint32_t id = it->second;
        kv_.erase(it);
        return id;
    }

    uint32_t locate(std::string_view key) const {
        const auto it = lower(key);
        return it != kv_.end() && it->first == key ? it->second : 0;
    }

    bool contains(std::string_view key) const { return locate(key) != 0; }

    uint32_t predecessor(std::string_view key, bool or_equal = false) const {
        auto it = lower(key);
        if (or_equal && it != kv_.end() && it->first == key) return it->second;
        return it == kv_.begin() ? 0 : std::prev(it)->second;
    }

    uint32_t successor(std::string_view key, bool or_equal = false) const {
        auto it = lower(key);
        if (it != kv_.end() && it->first == key) {
            if (or_equal) return it->second;
            ++it;
        }
        return it == kv_.end() ? 0 : it->second;
    }

    std::vector<uint32_t> locate_prefix(std::string_view prefix) const {
        std::vector<uint32_t> out;
        for (auto it = lower(prefix);
             it != kv_.end() && it->first.size() >= prefix.size() &&
             std::string_view(it->first).substr(0, prefix.size()) == prefix;
             ++it)
            out.push_back(it->second);
        return out;
    }

    uint32_t size() const { return uint32_t(kv_.size()); }
    uint32_t max_id() const { return next_id_ - 1; }
    const std::vector<std::pair<std::string, uint32_t>>& entries() const {
        return kv_;
    }

private:
    std::vector<std::pair<std::string, uint32_t>>::const_iterator lower(
        std::string_view key) const {
        return std::lower_bound(
            kv_.begin(), kv_.end(), key,
            [](const auto& e, std::string_view k) { return e.first < k; });
    }
    std::vector<std::pair<std::string, uint32_t>>::iterator lower(
        std::string_view key) {
        return std::lower_bound(
            kv_.begin(), kv_.end(), key,
            [](const auto& e, std::string_view k) { return e.first < k; });
    }

    std::vector<std::pair<std::string, uint32_t>> kv_;
    uint32_t next_id_ = 1;
};

inline uint64_t lcp_len(std::string_view a, std::string_view b) {
    const uint64_t n = std::min(a.size(), b.size());
    uint64_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

// Number of nodes in the compact trie of the set: the empty root, one node
// per string, and one per branching context. Branching contexts are exactly
// the longest common prefixes of neighbors in sorted order.
inline uint64_t compact_trie_node_count(std::vector<std::string> keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::string> nodes;
    nodes.reserve(2 * keys.size() + 1);
    nodes.emplace_back();
    for (size_t i = 0; i + 1 < keys.size(); ++i)
        nodes.push_back(keys[i].substr(0, lcp_len(keys[i], keys[i + 1])));
    nodes.insert(nodes.end(), keys.begin(), keys.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes.size();
}

}  // namespace ctriepp
