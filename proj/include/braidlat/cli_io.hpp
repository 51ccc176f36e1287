#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "braidlat/classifier.hpp"
#include "braidlat/embedding.hpp"

namespace braidlat {

struct Config {
    std::size_t search_budget = kDefaultEmbeddingBudget;
    std::size_t conjugacy_budget = kDefaultConjugacyBudget;
    unsigned threads = 1;
    bool record_timing = false;

    ClassifierOptions classifier() const;
    EmbeddingOptions embedding() const;
};

// Default configuration with BRAIDLAT_BUDGET (a positive integer) replacing
// the default search budget when set. A malformed value is ignored.
Config default_config();

// CSV with header `name,braid` (optionally a third `expected` column).
// Fields may be double-quoted with "" as an escaped quote. Throws ParseError
// on a bad header or an unterminated quote.
std::vector<KnotRecord> parse_knot_csv(std::string_view text);

// "1,2,3" -> {1,2,3}; throws ParseError.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace braidlat
