#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "braidlat/braid.hpp"

namespace braidlat {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<long long>>;

// Weighted cycle Γ: per copy, n = Σy vertices with weights
// (-x1-2, (-2)^{y1-1}, ..., -xt-2, (-2)^{yt-1}); neighbours pair to 1 and the
// closing edge carries (-1)^d.
struct GammaSpec {
    int d = 0;  // 0 or 1
    std::vector<int> x;
    std::vector<int> y;
    int k = 1;  // number of orthogonal copies
};

struct GramLattice {
    IntMatrix gram;
    GammaSpec spec;
    int block_size = 0;  // n = Σy
};

void validate(const GammaSpec& spec);
GramLattice gamma_gram(const GammaSpec& spec);
IntMatrix orthogonal_sum(const IntMatrix& block, int k);

bool is_symmetric(const IntMatrix& m);
bool is_negative_definite(const IntMatrix& m);
BigInt determinant(const IntMatrix& m);
BigInt wu_norm(const IntMatrix& m);

// 2d - e(β), e(β) = 6d + Σx - Σy.
int signature_erle(const NormalForm3& nf);

}  // namespace braidlat
