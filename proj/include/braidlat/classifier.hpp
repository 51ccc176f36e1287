#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "braidlat/blowup.hpp"
#include "braidlat/braid.hpp"

namespace braidlat {

enum class Family { NotAKnot, Family1, Family2, Family3, Obstructed, Inconclusive };

std::string to_string(Family f);

struct ClassifierOptions {
    std::size_t conjugacy_budget = kDefaultConjugacyBudget;
    std::size_t witness_budget = kDefaultWitnessBudget;
};

struct AmphichiralityWitness {
    bool reversed = false;  // false: K^m ≃ K, true: K^m ≃ -K
    bool conjugacy_checked = false;
    std::string direction() const { return reversed ? "K^m≃-K" : "K^m≃K"; }
};

struct Verdict {
    Family family = Family::Inconclusive;
    std::string conclusion;

    BraidWord input;
    int exponent_sum = 0;
    int components = 0;
    std::optional<NormalForm3> normal_form;  // of the knot actually analysed
    bool mirrored = false;                   // normal_form describes the mirror of the input

    // Family 1
    IntString c_string;
    std::optional<Family1Witness> family1;
    std::optional<BlowupChain> quasipositive_witness;

    // Family 2
    IntString weight_string;
    std::optional<std::vector<ExpansionMove>> expansion_moves;
    std::optional<BraidWord> a_word;
    std::optional<BraidWord> family2_braid;

    // Family 3 (principal or annotation)
    std::optional<Family3Symmetry> symmetry;
    std::optional<AmphichiralityWitness> amphichirality;

    std::vector<std::string> failed_checks;  // Obstructed
    std::string reason;                      // Inconclusive, NotAKnot
    std::vector<std::string> annotations;
    std::vector<std::string> anchors;
};

// |e(w)| <= 2, the exponent-sum consequence of the slice-Bennequin inequality.
bool bennequin_bound_ok(const BraidWord& w);

Verdict classify_knot(const BraidWord& w, const ClassifierOptions& opt = {});

// Rebuilds β'_a, takes the normal form of its closure and compares the
// resulting weight string with S up to dihedral symmetry.
bool crosscheck_family2(const BraidWord& a, const IntString& S,
                        std::size_t budget = kDefaultConjugacyBudget);

// Rotation: K^m ≃ K, reflection: K^m ≃ -K. The braid-level check compares
// the mirror word with the word (rotation) or its reversal (reflection) by
// conjugacy; a budget overrun leaves conjugacy_checked false.
AmphichiralityWitness amphichirality_witness(const NormalForm3& nf, const Family3Symmetry& sym,
                                             std::size_t budget = kDefaultConjugacyBudget);

struct KnotRecord {
    std::string name;
    std::string braid;  // unparsed, so that parse failures stay per record
    std::optional<std::string> expected;
    std::string row_error;  // set by the reader for malformed rows
};

struct BatchEntry {
    std::string name;
    std::optional<Verdict> verdict;
    std::string error;  // parse or internal failure for this record
    int error_code = 0;  // 2 parse error, 3 internal assertion
};

std::vector<BatchEntry> batch_classify(const std::vector<KnotRecord>& records,
                                       const ClassifierOptions& opt = {}, unsigned threads = 1);

}  // namespace braidlat
