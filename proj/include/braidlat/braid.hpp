#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace braidlat {

// One Artin generator of B3 or its inverse.
struct Letter {
    int gen = 1;   // 1 or 2
    int sign = 1;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

using BraidWord = std::vector<Letter>;

// Parses either the compact grammar (a, A, b, B; whitespace ignored) or the
// verbose grammar (s1, s2 with optional ^exponent). Mixing them is an error.
BraidWord parse_braid(std::string_view text);

// Compact form, no separators.
std::string print_braid(const BraidWord& w);

// Unicode rendering such as "σ₁σ₂⁻¹", used in human-readable output only.
std::string pretty_braid(const BraidWord& w);

int exponent_sum(const BraidWord& w);

struct ClosurePermutation {
    std::array<int, 3> perm{0, 1, 2};  // image of strand i (0-based)
    int cycle_count = 3;
    bool is_knot() const { return cycle_count == 1; }
};

ClosurePermutation closure_components(const BraidWord& w);

BraidWord mirror(const BraidWord& w);
BraidWord reverse(const BraidWord& w);
BraidWord invert(const BraidWord& w);
BraidWord free_cyclic_reduce(const BraidWord& w);
BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord power(const BraidWord& w, int n);

// Garside structure of B3 -----------------------------------------------------

// A simple element is a positive permutation braid; stored as the induced
// permutation of {0,1,2}.
using Perm = std::array<std::uint8_t, 3>;

// Left normal form Δ^inf · A_1 ⋯ A_r with every A_i a proper simple element.
struct GarsideForm {
    int inf = 0;
    std::vector<Perm> factors;
    int sup() const { return inf + static_cast<int>(factors.size()); }
    friend bool operator==(const GarsideForm&, const GarsideForm&) = default;
    friend auto operator<=>(const GarsideForm&, const GarsideForm&) = default;
};

GarsideForm left_normal_form(const BraidWord& w);
BraidWord word_of(const GarsideForm& g);

inline constexpr std::size_t kDefaultConjugacyBudget = 1'000'000;

// All elements of the super summit set, sorted. Throws BudgetExceeded when the
// closure grows past `budget` states.
std::vector<GarsideForm> super_summit_set(const BraidWord& w,
                                          std::size_t budget = kDefaultConjugacyBudget);

// Conjugacy in B3. Throws BudgetExceeded (never returns false on a timeout).
bool garside_conjugate(const BraidWord& w1, const BraidWord& w2,
                       std::size_t budget = kDefaultConjugacyBudget);

// Normal form (σ1σ2)^{3d} · Π σ1^{x_i} σ2^{-y_i} -------------------------------

struct NormalForm3 {
    int d = 0;
    std::vector<int> x;
    std::vector<int> y;
    int t() const { return static_cast<int>(x.size()); }
    friend bool operator==(const NormalForm3&, const NormalForm3&) = default;
};

// Throws PreconditionError if the invariants (x_i, y_i >= 1, equal lengths,
// Σ(x_i - y_i) = -4d, d in {-1,0,1}) fail.
void validate(const NormalForm3& nf);

// Least rotation of the (x1,y1,...,xt,yt) pairs.
NormalForm3 canonical(NormalForm3 nf);

BraidWord word_of(const NormalForm3& nf);

enum class NormalFormStatus { Ok, NotRepresentable, BudgetExceeded };

struct NormalFormResult {
    NormalFormStatus status = NormalFormStatus::NotRepresentable;
    std::optional<NormalForm3> nf;
    // The generic form Δ^{2d}·Πσ1^{x_i}σ2^{-y_i} even when d or Σ(x_i - y_i)
    // fall outside the normal-form range; empty for the non-generic classes.
    std::optional<NormalForm3> generic;
    std::string reason;
};

NormalFormResult to_normal_form(const BraidWord& w,
                                std::size_t budget = kDefaultConjugacyBudget);

// Least canonical normal form over w and its reversal: reversing the word
// reverses the orientation of the closure, so this is an invariant of the
// unoriented closure.
NormalFormResult closure_normal_form(const BraidWord& w,
                                     std::size_t budget = kDefaultConjugacyBudget);

// Requires nf.d == -1; returns the normal form of the mirror closure (d == 1).
NormalForm3 mirror_normal_form(const NormalForm3& nf,
                               std::size_t budget = kDefaultConjugacyBudget);

// Symmetric-union braids ---------------------------------------------------------

// β_a = σ2 σ1 σ2^{-1} a σ2 σ1^{-1} σ2^{-1} a^{-1}; with primed = true the conjugate
// β'_a = σ2^{-2} a σ2^2 Δ^{-1} a^{-1} Δ.
BraidWord symmetric_union_braid(const BraidWord& a, bool primed = false);

enum class ExpansionMove { A, B };

struct Family2Braid {
    BraidWord a;
    BraidWord braid;  // β'_a
};

Family2Braid family2_braid_from_expansions(const std::vector<ExpansionMove>& moves);

BraidWord garside_delta();

}  // namespace braidlat
