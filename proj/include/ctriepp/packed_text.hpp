#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ctriepp {

// One machine word; all packing math is fixed to 64-bit words.
inline constexpr uint32_t kWordBits = 64;

// The 2-fattest number of [l..r]: the unique value with the most trailing
// zero bits. Requires 1 <= l <= r.
inline uint64_t two_fattest(uint64_t l, uint64_t r) {
    if (l < 1 || l > r)
        throw invalid_interval("two_fattest: need 1 <= l <= r");
    if (l == r) return l;
    // Clear every bit of r below the highest bit where l-1 and r differ.
    const uint64_t diff = (l - 1) ^ r;
    const uint64_t top = uint64_t(1) << (63 - std::countl_zero(diff));
    return r & ~(top - 1);
}

struct pack_config {
    uint32_t sigma = 256;
    uint32_t bits_per_char = 8;  // ceil(log2(sigma))
    uint32_t alpha = 8;          // characters per word, floor(64 / bits_per_char)

    pack_config() = default;
    explicit pack_config(uint32_t sigma_) : sigma(sigma_) {
        if (sigma < 2 || sigma > (uint32_t(1) << 16))
            throw std::invalid_argument("pack_config: sigma must be in [2, 2^16]");
        bits_per_char = uint32_t(std::bit_width(sigma - 1));
        alpha = kWordBits / bits_per_char;
    }

    uint32_t char_mask() const {
        return bits_per_char >= 32 ? ~uint32_t(0)
                                   : (uint32_t(1) << bits_per_char) - 1;
    }
};

// Reference to a prefix of one stored text: (text id, character length).
struct extent_ref {
    uint32_t text = 0;
    uint32_t len = 0;

    friend bool operator==(const extent_ref&, const extent_ref&) = default;
};

// Borrowed view of one packed string: `len` characters starting at word 0 of
// `words`, laid out per pack_config. The owning store outlives the view.
struct packed_view {
    const uint64_t* words = nullptr;
    uint32_t len = 0;
};

namespace detail {

// 0-based character read, no bounds checks.
inline uint32_t view_char0(const pack_config& cfg, packed_view v, uint64_t j) {
    const uint64_t w = v.words[j / cfg.alpha];
    const uint32_t sh = uint32_t(j % cfg.alpha) * cfg.bits_per_char;
    return uint32_t(w >> sh) & cfg.char_mask();
}

// alpha characters starting at 0-based character c, packed to the low bits.
// Caller guarantees at least alpha characters remain, so the second word read
// stays inside the view's own words.
inline uint64_t read_chunk(const pack_config& cfg, packed_view v, uint64_t c) {
    const uint64_t i = c / cfg.alpha;
    const uint32_t sh = uint32_t(c % cfg.alpha) * cfg.bits_per_char;
    if (sh == 0) return v.words[i];
    return (v.words[i] >> sh) | (v.words[i + 1] << (kWordBits - sh));
}

}  // namespace detail

// 1-based character access.
inline uint32_t char_at(const pack_config& cfg, packed_view v, uint64_t i) {
    if (i < 1 || i > v.len) throw index_error("char_at: position out of range");
    return detail::view_char0(cfg, v, i - 1);
}

// Packed characters (from, from + count] with the lowest character in the
// least significant bits. `from` must be a multiple of alpha and count at
// most alpha, which keeps this one masked word read; it is the access
// pattern of handle keys and macro links.
inline uint64_t window_word(const pack_config& cfg, packed_view v,
                            uint32_t from, uint32_t count) {
    if (from % cfg.alpha != 0 || count > cfg.alpha || uint64_t(from) + count > v.len)
        throw index_error("window_word: bad window");
    if (count == 0) return 0;
    const uint64_t w = v.words[from / cfg.alpha];
    const uint32_t bits = count * cfg.bits_per_char;
    return bits >= kWordBits ? w : (w & ((uint64_t(1) << bits) - 1));
}

// Longest common prefix (in characters) of the suffixes a[a_from+1..] and
// b[b_from+1..]. Offsets count characters already consumed. Word-parallel
// when the offsets share an in-word phase or characters tile words exactly;
// mixed phases with padding bits inside words fall back to a scalar scan.
inline uint64_t lcp(const pack_config& cfg, packed_view a, uint64_t a_from,
                    packed_view b, uint64_t b_from) {
    if (a_from > a.len || b_from > b.len)
        throw index_error("lcp: offset out of range");
    const uint64_t avail =
        std::min<uint64_t>(a.len - a_from, b.len - b_from);
    const uint32_t bpc = cfg.bits_per_char;
    const uint32_t alpha = cfg.alpha;
    uint64_t m = 0;

    const bool same_phase = (a_from % alpha) == (b_from % alpha);
    const bool dense = (kWordBits % bpc) == 0;
    if (same_phase || dense) {
        while (m < avail && (a_from + m) % alpha != 0) {
            if (detail::view_char0(cfg, a, a_from + m) !=
                detail::view_char0(cfg, b, b_from + m))
                return m;
            ++m;
        }
        while (avail - m >= alpha) {
            const uint64_t wa = a.words[(a_from + m) / alpha];
            const uint64_t wb = detail::read_chunk(cfg, b, b_from + m);
            if (wa != wb)
                return m + uint64_t(std::countr_zero(wa ^ wb)) / bpc;
            m += alpha;
        }
    }
    while (m < avail) {
        if (detail::view_char0(cfg, a, a_from + m) !=
            detail::view_char0(cfg, b, b_from + m))
            return m;
        ++m;
    }
    return avail;
}

// Append-only store of packed strings. Each appended text starts at a fresh
// word; character j (1-based) of a text sits in word start + (j-1)/alpha at
// bit offset ((j-1)%alpha)*bits_per_char, earliest character in the least
// significant bits. Bits past the last character stay zero, so two fully
// used words are equal exactly when their characters are.
class packed_text {
public:
    explicit packed_text(pack_config cfg = pack_config()) : cfg_(cfg) {}

    const pack_config& config() const { return cfg_; }
    uint32_t text_count() const { return uint32_t(bounds_.size()); }
    uint64_t total_chars() const { return total_chars_; }
    uint64_t word_count() const { return words_.size(); }

    uint64_t words_for(uint64_t len) const {
        return (len + cfg_.alpha - 1) / cfg_.alpha;
    }

    uint32_t append(std::string_view bytes) {
        check_id_space();
        const uint64_t start = words_.size();
        words_.resize(start + words_for(bytes.size()), 0);
        if (cfg_.bits_per_char == 8 && std::endian::native == std::endian::little) {
            if (cfg_.sigma < 256)
                for (unsigned char c : bytes) check_char(c);
            if (!bytes.empty())
                std::memcpy(words_.data() + start, bytes.data(), bytes.size());
        } else {
            for (size_t j = 0; j < bytes.size(); ++j)
                put(start, j, (unsigned char)bytes[j]);
        }
        return push_bounds(start, uint32_t(bytes.size()));
    }

    uint32_t append(std::span<const uint32_t> chars) {
        check_id_space();
        const uint64_t start = words_.size();
        words_.resize(start + words_for(chars.size()), 0);
        for (size_t j = 0; j < chars.size(); ++j)
            put(start, j, chars[j]);
        return push_bounds(start, uint32_t(chars.size()));
    }

    // Drop the most recently appended text.
    void pop_text() {
        if (bounds_.empty()) throw index_error("pop_text: store is empty");
        words_.resize(bounds_.back().start);
        total_chars_ -= bounds_.back().len;
        bounds_.pop_back();
    }

    uint32_t text_len(uint32_t text) const { return rec(text).len; }

    packed_view view(uint32_t text) const {
        const text_rec& r = rec(text);
        return {words_.data() + r.start, r.len};
    }

    packed_view view(extent_ref e) const {
        const text_rec& r = rec(e.text);
        if (e.len > r.len) throw index_error("view: extent longer than text");
        return {words_.data() + r.start, e.len};
    }

    uint32_t char_at(extent_ref e, uint64_t i) const {
        return ctriepp::char_at(cfg_, view(e), i);
    }

    uint64_t window_word(extent_ref e, uint32_t from, uint32_t count) const {
        return ctriepp::window_word(cfg_, view(e), from, count);
    }

    uint64_t lcp(extent_ref a, uint64_t a_from, extent_ref b, uint64_t b_from) const {
        return ctriepp::lcp(cfg_, view(a), a_from, view(b), b_from);
    }

    // Memory accounting for space reports.
    uint64_t payload_bits() const { return words_.size() * kWordBits; }
    uint64_t overhead_bits() const {
        return (words_.capacity() - words_.size()) * kWordBits +
               bounds_.capacity() * sizeof(text_rec) * 8;
    }

private:
    struct text_rec {
        uint64_t start = 0;  // first word
        uint32_t len = 0;    // characters
    };

    void check_char(uint32_t c) const {
        if (c >= cfg_.sigma)
            throw invalid_character("packed_text: character exceeds sigma");
    }

    void check_id_space() const {
        if (bounds_.size() == 0xFFFFFFFFull)
            throw arena_full("packed_text: text id space exhausted");
    }

    uint32_t push_bounds(uint64_t start, uint32_t len) {
        bounds_.push_back({start, len});
        total_chars_ += len;
        return uint32_t(bounds_.size() - 1);
    }

    void put(uint64_t start, uint64_t j, uint32_t c) {
        check_char(c);
        const uint32_t sh = uint32_t(j % cfg_.alpha) * cfg_.bits_per_char;
        words_[start + j / cfg_.alpha] |= uint64_t(c) << sh;
    }

    const text_rec& rec(uint32_t text) const {
        if (text >= bounds_.size()) throw index_error("packed_text: bad text id");
        return bounds_[text];
    }

    pack_config cfg_;
    std::vector<uint64_t> words_;
    std::vector<text_rec> bounds_;
    uint64_t total_chars_ = 0;
};

// Owning packed buffer for a single query string; packs once so that all
// later comparisons against stored texts run on whole words.
class packed_query {
public:
    packed_query() = default;

    packed_query(const pack_config& cfg, std::string_view bytes) {
        len_ = uint32_t(bytes.size());
        words_.assign((bytes.size() + cfg.alpha - 1) / cfg.alpha, 0);
        if (cfg.bits_per_char == 8 && std::endian::native == std::endian::little) {
            if (cfg.sigma < 256)
                for (unsigned char c : bytes)
                    if (c >= cfg.sigma)
                        throw invalid_character("packed_query: character exceeds sigma");
            if (!bytes.empty())
                std::memcpy(words_.data(), bytes.data(), bytes.size());
        } else {
            for (size_t j = 0; j < bytes.size(); ++j) {
                const uint32_t c = (unsigned char)bytes[j];
                if (c >= cfg.sigma)
                    throw invalid_character("packed_query: character exceeds sigma");
                const uint32_t sh = uint32_t(j % cfg.alpha) * cfg.bits_per_char;
                words_[j / cfg.alpha] |= uint64_t(c) << sh;
            }
        }
    }

    packed_view view() const { return {words_.data(), len_}; }
    uint32_t size() const { return len_; }

private:
    std::vector<uint64_t> words_;
    uint32_t len_ = 0;
};

}  // namespace ctriepp
