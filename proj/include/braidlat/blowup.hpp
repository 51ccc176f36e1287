#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidlat/braid.hpp"

namespace braidlat {

using IntString = std::vector<int>;

std::string format_string(const IntString& s);
IntString parse_int_string(std::string_view text);  // "[5,1,2]" or "5,1,2"

// Dihedral (rotations and reversal) canonical representative: the
// lexicographically least among all 2n readings.
IntString dihedral_canonical(const IntString& s);
bool dihedral_equal(const IntString& a, const IntString& b);

// Blowups -----------------------------------------------------------------------

enum class BlowupKind { Head, Interior, Tail };

struct BlowupMove {
    BlowupKind kind = BlowupKind::Head;
    int index = 0;  // 1-based gap for Interior: the new 1 goes between n_i and n_{i+1}
    friend bool operator==(const BlowupMove&, const BlowupMove&) = default;
};

std::string describe(const BlowupMove& m);

// head: (1, n1+1, n2, ..., n_{k-1}, n_k+1); interior(i): (n1, ..., n_i+1, 1,
// n_{i+1}+1, ..., n_k); tail: (n1+1, n2, ..., n_k+1, 1).
IntString blowup(const IntString& z, BlowupMove move);

// strings.front() == (0,0), strings.back() is the target; moves[i] takes
// strings[i] to strings[i+1].
struct BlowupChain {
    std::vector<IntString> strings;
    std::vector<BlowupMove> moves;
};

// Replays the moves from (0,0); true iff every step reproduces the recorded string.
bool replay(const BlowupChain& chain);

std::optional<BlowupChain> blowdown_chain(const IntString& s);

struct Family1Witness {
    BlowupChain chain;                 // chain of the demoted string
    std::pair<int, int> demoted_positions;  // 0-based, i < j
    IntString demoted;
};

std::optional<Family1Witness> family1_check(const IntString& c);

IntString c_string(const std::vector<int>& x, const std::vector<int>& y);

inline constexpr std::size_t kDefaultWitnessBudget = 1'000'000;

// Iterated blowup s of (0,0) with |s| = Σy and c_string(x,y) >= s pointwise.
// Throws BudgetExceeded when the node cap is hit.
std::optional<BlowupChain> quasipositivity_witness(const std::vector<int>& x,
                                                   const std::vector<int>& y,
                                                   std::size_t budget = kDefaultWitnessBudget);

// (-2)-expansions ------------------------------------------------------------------

IntString minus2_expand(const IntString& m, ExpansionMove variant);
IntString apply_expansions(const std::vector<ExpansionMove>& moves);  // from (-2,-2,-5)
std::optional<std::vector<ExpansionMove>> expansion_certificate(const IntString& S);
std::string format_moves(const std::vector<ExpansionMove>& moves);

IntString weight_string(const std::vector<int>& x, const std::vector<int>& y);

// Inverse of weight_string read from the first entry <= -3 in the given
// direction; nullopt when every entry is -2 or some entry is > -2.
std::optional<std::pair<std::vector<int>, std::vector<int>>> labels_from_weight_string(
    const IntString& w);

// Polygon symmetries ------------------------------------------------------------------

struct Family3Symmetry {
    enum class Kind { Rotation, Reflection } kind = Kind::Rotation;
    int param = 0;           // rotation shift r, or reflection constant c
    std::vector<int> phi_V;  // 0-based vertex images
    std::vector<int> phi_E;  // 0-based edge images
};

// Tests x_i = y_{φE(i)} and y_i = x_{φV(i+1)} over all 2t dihedral symmetries,
// rotations first. Rotation means K^m ≃ K, reflection K^m ≃ -K.
std::optional<Family3Symmetry> family3_symmetry(const std::vector<int>& x,
                                                const std::vector<int>& y);

bool satisfies_phi_condition(const std::vector<int>& x, const std::vector<int>& y,
                             const Family3Symmetry& s);

}  // namespace braidlat
