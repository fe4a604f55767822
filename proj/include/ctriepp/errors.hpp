#pragma once

#include <stdexcept>
#include <string>

namespace ctriepp {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A character outside [0, sigma) was handed to the packed text store.
struct invalid_character : error {
    using error::error;
};

// Out-of-range position in a packed string.
struct index_error : error {
    using error::error;
};

// two_fattest interval violates 1 <= l <= r.
struct invalid_interval : error {
    using error::error;
};

// Node id space (32 bit) exhausted.
struct arena_full : error {
    using error::error;
};

// Access or free of a node slot that is not live (checked builds).
struct use_after_free : error {
    using error::error;
};

// Key already present in a dictionary that requires distinct keys.
struct duplicate_key : error {
    using error::error;
};

// Deletion target exists as a node but carries no keyword id.
struct not_a_keyword : error {
    using error::error;
};

// Deletion target is not in the dictionary.
struct not_found : error {
    using error::error;
};

// Cuckoo hashing could not place all keys even after repeated growth.
struct seed_failure : error {
    using error::error;
};

// Corpus file contains no keywords.
struct empty_corpus : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

struct usage_error : error {
    using error::error;
};

}  // namespace ctriepp
