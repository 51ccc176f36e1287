#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "braidlat/lattice.hpp"

namespace braidlat {

// Coordinates in the standard negative diagonal lattice: u·v = -Σ u_i v_i.
using DiagonalVector = std::vector<int>;

long long pairing(const DiagonalVector& u, const DiagonalVector& v);

struct EmbeddingStats {
    std::size_t nodes = 0;
    std::size_t pruned = 0;
    std::optional<double> wall_ms;  // filled only when timing is requested
};

struct EmbeddingCertificate {
    IntMatrix gram;
    std::vector<DiagonalVector> vectors;
    BigInt index = 0;
    DiagonalVector wu;
};

enum class EmbeddingStatus { Found, None, BudgetExceeded };

struct EmbeddingResult {
    EmbeddingStatus status = EmbeddingStatus::None;
    std::optional<EmbeddingCertificate> certificate;
    EmbeddingStats stats;
    bool wu_normalized = false;  // search ran with the adapted-basis coordinate bounds
};

inline constexpr std::size_t kDefaultEmbeddingBudget = 10'000'000;

struct EmbeddingOptions {
    std::size_t budget = kDefaultEmbeddingBudget;
    unsigned threads = 1;
    bool record_timing = false;
};

// Circular in the sense used by the Wu normalization: pairings in {-1,0,1},
// every vertex has exactly two neighbours, every component has >= 3 vertices.
bool gram_is_circular(const IntMatrix& gram);

// Depth-first search over vectors in basis order. The returned certificate is
// the first in lexicographic candidate order and does not depend on `threads`.
EmbeddingResult find_embedding(const IntMatrix& gram, const EmbeddingOptions& options = {});

bool verify_certificate(const EmbeddingCertificate& cert);

// |det| of a square coordinate matrix; nullopt when it is singular.
std::optional<BigInt> odd_index(const std::vector<DiagonalVector>& vectors);

}  // namespace braidlat
