#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace ctriepp {

using node_id = uint32_t;
inline constexpr node_id node_none = 0xFFFFFFFFu;

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Three xorshifts interleaved with two 64-bit multiplications.
inline uint64_t mix64(uint64_t x, uint64_t m0, uint64_t m1) {
    x ^= x >> 33;
    x *= m0;
    x ^= x >> 29;
    x *= m1;
    x ^= x >> 32;
    return x;
}

struct dict_config {
    uint32_t hash_count = 3;  // 2 or 3 cuckoo hash functions
    uint32_t max_walk = 100;  // eviction steps before forcing growth
    double max_load = 0.8;
    bool promote_children = false;  // child dicts: sorted list -> cuckoo
    uint32_t promote_threshold = 32;
    uint64_t seed = 0x5eedbeefcafe0001ull;

    void validate() const {
        if (hash_count < 2 || hash_count > 3)
            throw std::invalid_argument("dict_config: hash_count must be 2 or 3");
        if (max_walk == 0 || max_load <= 0.0 || max_load > 1.0)
            throw std::invalid_argument("dict_config: bad walk/load limits");
    }
};

// One family of hash functions per dictionary: every cuckoo table sharing a
// family places a given key at the same slots, regardless of which table it
// lives in or when the table was built.
struct hash_family {
    uint32_t hash_count = 3;
    uint64_t mul[3][2] = {};
    uint64_t walk_seed = 0;

    hash_family() : hash_family(dict_config{}) {}
    explicit hash_family(const dict_config& cfg) {
        cfg.validate();
        hash_count = cfg.hash_count;
        uint64_t s = cfg.seed;
        for (auto& pair : mul) {
            pair[0] = splitmix64(s) | 1;  // odd multipliers
            pair[1] = splitmix64(s) | 1;
        }
        walk_seed = splitmix64(s);
    }

    uint64_t apply(uint32_t i, uint64_t prehash) const {
        return mix64(prehash, mul[i][0], mul[i][1]);
    }
};

// Process-wide instrumentation, cheap enough to keep always on. Tables do not
// carry per-instance counters so that their footprint stays flat.
struct dict_counters {
    static inline uint64_t find_calls = 0;
    static inline uint64_t find_probes = 0;
    static inline uint32_t max_find_probes = 0;
    static inline uint32_t max_walk_len = 0;
    static inline uint32_t max_grow_rounds = 0;

    static void reset() {
        find_calls = find_probes = 0;
        max_find_probes = max_walk_len = max_grow_rounds = 0;
    }
};

// Cuckoo hash table over 32-bit values. Keys are never stored: the Ops
// object recomputes a value's key on demand and supplies hashing/equality:
//
//   struct Ops {
//     using key_type = ...;
//     key_type key_of(node_id v) const;
//     uint64_t prehash(const key_type&) const;   // mixed by the family
//     bool equal(const key_type&, const key_type&) const;
//     bool less(const key_type&, const key_type&) const;  // ordered fallback
//     const hash_family& family() const;
//     const dict_config& config() const;
//   };
//
// Capacity is a power of two (initially 4); slots are selected by the top
// bits of the mixed hash. Collisions evict via a seeded random walk; a walk
// longer than max_walk doubles the capacity, and eight fruitless doublings
// in a row raise seed_failure.
class cuckoo_dict {
public:
    cuckoo_dict() = default;
    cuckoo_dict(cuckoo_dict&& o) noexcept { swap(o); }
    cuckoo_dict& operator=(cuckoo_dict&& o) noexcept {
        if (this != &o) {
            release();
            swap(o);
        }
        return *this;
    }
    cuckoo_dict(const cuckoo_dict&) = delete;
    cuckoo_dict& operator=(const cuckoo_dict&) = delete;
    ~cuckoo_dict() { release(); }

    uint32_t size() const { return size_; }
    uint32_t capacity() const { return slots_ ? (uint32_t(1) << lg_cap_) : 0; }
    bool empty() const { return size_ == 0; }

    template <class Ops>
    node_id find(const typename Ops::key_type& k, const Ops& ops) const {
        ++dict_counters::find_calls;
        if (!slots_) return node_none;
        const uint32_t h = ops.family().hash_count;
        uint32_t probes = 0;
        node_id out = node_none;
        for (uint32_t i = 0; i < h; ++i) {
            ++probes;
            const node_id v = slots_[slot_of(i, k, ops)];
            if (v != node_none && ops.equal(ops.key_of(v), k)) {
                out = v;
                break;
            }
        }
        dict_counters::find_probes += probes;
        dict_counters::max_find_probes =
            std::max(dict_counters::max_find_probes, probes);
        return out;
    }

    template <class Ops>
    void insert(node_id v, const Ops& ops) {
        const auto k = ops.key_of(v);
        if (find(k, ops) != node_none)
            throw duplicate_key("cuckoo_dict: key already present");
        if (!slots_) allocate(2, ops.family());
        if (double(size_ + 1) > ops.config().max_load * capacity())
            grow(ops, std::nullopt);
        node_id pending = v;
        if (!try_place(pending, ops)) grow(ops, pending);
        ++size_;
    }

    // Removes the entry whose key equals k; returns it, or node_none.
    template <class Ops>
    node_id remove(const typename Ops::key_type& k, const Ops& ops) {
        if (!slots_) return node_none;
        const uint32_t h = ops.family().hash_count;
        for (uint32_t i = 0; i < h; ++i) {
            const uint32_t s = slot_of(i, k, ops);
            const node_id v = slots_[s];
            if (v != node_none && ops.equal(ops.key_of(v), k)) {
                slots_[s] = node_none;
                --size_;
                return v;
            }
        }
        return node_none;
    }

    template <class F>
    void for_each(F&& f) const {
        const uint32_t cap = capacity();
        for (uint32_t s = 0; s < cap; ++s)
            if (slots_[s] != node_none) f(slots_[s]);
    }

    uint64_t footprint_bytes() const { return uint64_t(capacity()) * sizeof(node_id); }

private:
    template <class Ops>
    uint32_t slot_of(uint32_t i, const typename Ops::key_type& k, const Ops& ops) const {
        const uint64_t h = ops.family().apply(i, ops.prehash(k));
        return uint32_t(h >> (kCuckooHashBits - lg_cap_));
    }

    static constexpr uint32_t kCuckooHashBits = 64;

    void allocate(uint32_t lg, const hash_family& fam) {
        lg_cap_ = uint8_t(lg);
        const uint32_t cap = uint32_t(1) << lg;
        slots_ = new node_id[cap];
        std::fill_n(slots_, cap, node_none);
        if (rng_ == 0) rng_ = fam.walk_seed;
    }

    // Places `pending`, evicting along a random walk. On failure `pending`
    // holds the homeless value.
    template <class Ops>
    bool try_place(node_id& pending, const Ops& ops) {
        const uint32_t h = ops.family().hash_count;
        const uint32_t max_walk = ops.config().max_walk;
        for (uint32_t step = 0; step <= max_walk; ++step) {
            const auto k = ops.key_of(pending);
            for (uint32_t i = 0; i < h; ++i) {
                const uint32_t s = slot_of(i, k, ops);
                if (slots_[s] == node_none) {
                    slots_[s] = pending;
                    dict_counters::max_walk_len =
                        std::max(dict_counters::max_walk_len, step);
                    return true;
                }
            }
            if (step == max_walk) break;
            const uint32_t i = uint32_t(splitmix64(rng_) % h);
            const uint32_t s = slot_of(i, k, ops);
            std::swap(pending, slots_[s]);
        }
        return false;
    }

    template <class Ops>
    void grow(const Ops& ops, std::optional<node_id> pending) {
        std::vector<node_id> entries;
        entries.reserve(size_ + 1);
        for_each([&](node_id v) { entries.push_back(v); });
        if (pending) entries.push_back(*pending);

        uint32_t lg = lg_cap_;
        for (uint32_t round = 1; round <= kMaxGrowRounds; ++round) {
            dict_counters::max_grow_rounds =
                std::max(dict_counters::max_grow_rounds, round);
            ++lg;
            node_id* old = slots_;
            slots_ = nullptr;
            allocate(lg, ops.family());
            delete[] old;
            bool ok = true;
            for (node_id v : entries) {
                node_id cur = v;
                if (!try_place(cur, ops)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return;
        }
        throw seed_failure("cuckoo_dict: growth failed to place all keys");
    }

    static constexpr uint32_t kMaxGrowRounds = 8;

    void release() {
        delete[] slots_;
        slots_ = nullptr;
        size_ = 0;
        lg_cap_ = 0;
    }

    void swap(cuckoo_dict& o) {
        std::swap(slots_, o.slots_);
        std::swap(size_, o.size_);
        std::swap(lg_cap_, o.lg_cap_);
        std::swap(rng_, o.rng_);
    }

    node_id* slots_ = nullptr;
    uint32_t size_ = 0;
    uint8_t lg_cap_ = 0;
    uint64_t rng_ = 0;
};

// Child dictionary of a trie node. Starts as an exact-fit sorted array (kept
// sorted and full: every insert/remove reallocates to the exact size) and can
// promote itself to a cuckoo table past a configured size. Ordered queries on
// the promoted form fall back to a scan.
class adaptive_dict {
public:
    adaptive_dict() = default;
    adaptive_dict(adaptive_dict&& o) noexcept { swap(o); }
    adaptive_dict& operator=(adaptive_dict&& o) noexcept {
        if (this != &o) {
            release();
            swap(o);
        }
        return *this;
    }
    adaptive_dict(const adaptive_dict&) = delete;
    adaptive_dict& operator=(const adaptive_dict&) = delete;
    ~adaptive_dict() { release(); }

    uint32_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool promoted() const { return promoted_; }

    template <class Ops>
    node_id find(const typename Ops::key_type& k, const Ops& ops) const {
        if (promoted_) return table()->find(k, ops);
        const uint32_t i = lower_bound(k, ops);
        if (i < size_ && ops.equal(ops.key_of(list()[i]), k)) return list()[i];
        return node_none;
    }

    template <class Ops>
    void insert(node_id v, const Ops& ops) {
        if (!promoted_ && ops.config().promote_children &&
            size_ + 1 > ops.config().promote_threshold)
            promote(ops);
        if (promoted_) {
            table()->insert(v, ops);
            ++size_;
            return;
        }
        const auto k = ops.key_of(v);
        const uint32_t i = lower_bound(k, ops);
        if (i < size_ && ops.equal(ops.key_of(list()[i]), k))
            throw duplicate_key("adaptive_dict: key already present");
        node_id* next = new node_id[size_ + 1];
        std::copy_n(list(), i, next);
        next[i] = v;
        std::copy_n(list() + i, size_ - i, next + i + 1);
        delete[] list();
        data_ = next;
        ++size_;
    }

    // Removes the entry with key k; returns it, or node_none.
    template <class Ops>
    node_id remove(const typename Ops::key_type& k, const Ops& ops) {
        if (promoted_) {
            const node_id v = table()->remove(k, ops);
            if (v != node_none) --size_;
            return v;
        }
        const uint32_t i = lower_bound(k, ops);
        if (i >= size_ || !ops.equal(ops.key_of(list()[i]), k)) return node_none;
        const node_id v = list()[i];
        if (size_ == 1) {
            delete[] list();
            data_ = nullptr;
        } else {
            node_id* next = new node_id[size_ - 1];
            std::copy_n(list(), i, next);
            std::copy_n(list() + i + 1, size_ - i - 1, next + i);
            delete[] list();
            data_ = next;
        }
        --size_;
        return v;
    }

    // Re-points the entry whose key is k at a new value with the same key.
    template <class Ops>
    void replace(const typename Ops::key_type& k, node_id v, const Ops& ops) {
        if (promoted_) {
            if (table()->remove(k, ops) == node_none)
                throw not_found("adaptive_dict: replace of absent key");
            table()->insert(v, ops);
            return;
        }
        const uint32_t i = lower_bound(k, ops);
        if (i >= size_ || !ops.equal(ops.key_of(list()[i]), k))
            throw not_found("adaptive_dict: replace of absent key");
        list()[i] = v;
    }

    // Smallest entry with key strictly greater than k.
    template <class Ops>
    node_id successor(const typename Ops::key_type& k, const Ops& ops) const {
        if (promoted_) {
            node_id best = node_none;
            table()->for_each([&](node_id v) {
                const auto kv = ops.key_of(v);
                if (ops.less(k, kv) &&
                    (best == node_none || ops.less(kv, ops.key_of(best))))
                    best = v;
            });
            return best;
        }
        uint32_t i = lower_bound(k, ops);
        if (i < size_ && ops.equal(ops.key_of(list()[i]), k)) ++i;
        return i < size_ ? list()[i] : node_none;
    }

    // Largest entry with key strictly less than k.
    template <class Ops>
    node_id predecessor(const typename Ops::key_type& k, const Ops& ops) const {
        if (promoted_) {
            node_id best = node_none;
            table()->for_each([&](node_id v) {
                const auto kv = ops.key_of(v);
                if (ops.less(kv, k) &&
                    (best == node_none || ops.less(ops.key_of(best), kv)))
                    best = v;
            });
            return best;
        }
        const uint32_t i = lower_bound(k, ops);
        return i > 0 ? list()[i - 1] : node_none;
    }

    template <class Ops>
    node_id min_entry(const Ops& ops) const {
        if (!promoted_) return size_ ? list()[0] : node_none;
        node_id best = node_none;
        table()->for_each([&](node_id v) {
            if (best == node_none || ops.less(ops.key_of(v), ops.key_of(best)))
                best = v;
        });
        return best;
    }

    template <class Ops>
    node_id max_entry(const Ops& ops) const {
        if (!promoted_) return size_ ? list()[size_ - 1] : node_none;
        node_id best = node_none;
        table()->for_each([&](node_id v) {
            if (best == node_none || ops.less(ops.key_of(best), ops.key_of(v)))
                best = v;
        });
        return best;
    }

    // Entries in ascending key order (materialized; used by iteration).
    template <class Ops>
    std::vector<node_id> sorted_entries(const Ops& ops) const {
        std::vector<node_id> out;
        out.reserve(size_);
        if (!promoted_) {
            out.assign(list(), list() + size_);
        } else {
            table()->for_each([&](node_id v) { out.push_back(v); });
            std::sort(out.begin(), out.end(), [&](node_id x, node_id y) {
                return ops.less(ops.key_of(x), ops.key_of(y));
            });
        }
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        if (promoted_) {
            table()->for_each(f);
        } else {
            for (uint32_t i = 0; i < size_; ++i) f(list()[i]);
        }
    }

    uint64_t footprint_bytes() const {
        if (promoted_)
            return sizeof(cuckoo_dict) + table()->footprint_bytes();
        return uint64_t(size_) * sizeof(node_id);
    }

private:
    node_id* list() const { return static_cast<node_id*>(data_); }
    cuckoo_dict* table() const { return static_cast<cuckoo_dict*>(data_); }

    template <class Ops>
    uint32_t lower_bound(const typename Ops::key_type& k, const Ops& ops) const {
        uint32_t lo = 0, hi = size_;
        while (lo < hi) {
            const uint32_t mid = (lo + hi) / 2;
            if (ops.less(ops.key_of(list()[mid]), k))
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    template <class Ops>
    void promote(const Ops& ops) {
        auto* t = new cuckoo_dict();
        for (uint32_t i = 0; i < size_; ++i) t->insert(list()[i], ops);
        delete[] list();
        data_ = t;
        promoted_ = 1;
    }

    void release() {
        if (promoted_)
            delete table();
        else
            delete[] list();
        data_ = nullptr;
        size_ = 0;
        promoted_ = 0;
    }

    void swap(adaptive_dict& o) {
        std::swap(data_, o.data_);
        std::swap(size_, o.size_);
        std::swap(promoted_, o.promoted_);
    }

    void* data_ = nullptr;
    uint32_t size_ = 0;
    uint8_t promoted_ = 0;
};

}  // namespace ctriepp
