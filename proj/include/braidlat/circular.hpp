#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braidlat/blowup.hpp"
#include "braidlat/embedding.hpp"

namespace braidlat {

using VectorSet = std::vector<DiagonalVector>;

enum class Flavor { Semipositive, Positive, Neither };

struct CircularityReport {
    bool is_circular = false;
    // Components as vector indices; in cycle order (starting at the smallest
    // index, heading to its smaller neighbour) when the set is circular.
    std::vector<std::vector<int>> components;
    Flavor flavor = Flavor::Neither;
    DiagonalVector wu;
    long long wu_norm = 0;
    std::string reason;  // first failed condition, empty when circular
};

CircularityReport classify(const VectorSet& vs);

// Per-axis signs ε with Σv = -Σ ε_a e_a. Throws PreconditionError when the set
// is not circular, the span does not have finite odd index, or W·W != -N;
// nullopt when some Wu coordinate is not ±1.
std::optional<std::vector<int>> adapted_basis(const VectorSet& vs);

// Multiplies axis a of every vector by signs[a].
VectorSet apply_signs(const VectorSet& vs, const std::vector<int>& signs);

struct CoefficientProfile {
    std::vector<std::vector<int>> coeff;  // coeff[v][a] = v·e_a
    std::vector<bool> in_w;               // W·v = v·v + 2
    std::vector<int> e_of;                // axis e_v, or -1 outside the W-subset
    bool injective = true;
};

// Throws InternalError if a coefficient leaves {-1,0,1,2} or the per-vector
// dichotomy Σ c(c-1) ∈ {0 outside W, 2 inside W} fails.
CoefficientProfile coefficient_profile(const VectorSet& vs, const std::vector<int>& signs);

struct TraceMove {
    std::string kind;          // "lift", "contract", "minus2_contract"
    std::vector<int> indices;  // vector slots involved, primary vector first
    int dropped_axis = -1;
};

struct SemipositiveComponent {
    std::vector<int> members;  // cycle order
    IntString c_string;        // negated self-intersections of the input
    IntString s_string;        // after the lifts: an iterated blowup of (0,0)
    BlowupChain chain;
};

struct SemipositiveReduction {
    std::vector<int> signs;
    std::vector<TraceMove> trace;
    std::vector<SemipositiveComponent> components;
    int lifted = 0;  // m in the counting argument; equals 2k
};

// Lift every unhit axis, then (-1)-contract down to triples. Hypotheses are
// checked first (PreconditionError); the per-component sum condition is taken
// as Σ(v·v+2) = 4-|D| <= -1. Every intermediate conclusion is asserted.
SemipositiveReduction reduce_semipositive(const VectorSet& vs);

struct NonInjectiveReduction {
    std::vector<int> signs;
    std::vector<TraceMove> trace;    // contract moves: [u, v, w], w the untouched neighbour
    std::vector<int> terminal;       // slots playing e1-e2, e3-e1, -2e3-e1
    std::vector<int> terminal_axes;  // e1, e2, e3
    std::vector<int> component;      // original members of the component that shrank, cycle order
    IntString weight_string;         // its self-intersections in cycle order
    std::vector<ExpansionMove> expansions;
};

NonInjectiveReduction reduce_positive_noninjective(const VectorSet& vs);

enum class TerminalKind { T2Pair, PairedCycles, OddCycle, TripleA, TripleB };

std::string to_string(TerminalKind kind);

struct TerminalStructure {
    TerminalKind kind = TerminalKind::T2Pair;
    int m = 0;                 // cycle parameter (PairedCycles, OddCycle) or ring length (TripleB)
    std::vector<int> members;  // vector slots in pattern order
    std::vector<int> f;        // f[i] is the axis playing f_{i+1}
};

// Splits a terminal set into irreducible components (overlapping supports)
// and matches each against the terminal patterns up to axis permutation,
// after normalizing signs to an adapted basis when the Wu element allows it.
// Unmatched components yield nullopt for that entry.
std::vector<std::optional<TerminalStructure>> recognize_terminal(const VectorSet& z);

struct InjectiveReduction {
    std::vector<int> signs;
    std::vector<TraceMove> trace;
    std::vector<TerminalStructure> structures;
    std::vector<IntString> weight_strings;  // per original component, cycle order
    std::vector<int> x;                     // labelling read off the first component
    std::vector<int> y;
    std::optional<Family3Symmetry> symmetry;
};

InjectiveReduction reduce_positive_injective(const VectorSet& vs);

}  // namespace braidlat
