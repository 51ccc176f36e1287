#pragma once

#include <random>
#include <string>
#include <vector>

#include "braidlat/braid.hpp"
#include "oracles.hpp"

namespace testsupport {

inline oracle::Word to_oracle(const braidlat::BraidWord& w) {
    oracle::Word out;
    for (const auto& l : w) out.push_back(l.gen * l.sign);
    return out;
}

inline braidlat::BraidWord from_oracle(const oracle::Word& w) {
    braidlat::BraidWord out;
    for (int l : w) out.push_back({l > 0 ? l : -l, l > 0 ? 1 : -1});
    return out;
}

inline braidlat::BraidWord random_braid(std::mt19937_64& rng, std::size_t len) {
    return from_oracle(oracle::random_word(rng, len));
}

inline braidlat::BraidWord W(const std::string& compact) { return braidlat::parse_braid(compact); }

}  // namespace testsupport
