#pragma once

#include "errors.hpp"
#include "packed_text.hpp"
#include "adaptive_dict.hpp"
#include "arena.hpp"
#include "micro_trie.hpp"
#include "dictionary.hpp"
