#include "braidlat/lattice.hpp"

#include <numeric>
#include <utility>

#include "braidlat/errors.hpp"

namespace braidlat {

void validate(const GammaSpec& spec) {
    if (spec.d != 0 && spec.d != 1) throw PreconditionError("Γ requires d in {0,1}");
    if (spec.x.empty() || spec.x.size() != spec.y.size())
        throw PreconditionError("Γ requires t >= 1 and |x| = |y|");
    for (std::size_t i = 0; i < spec.x.size(); ++i)
        if (spec.x[i] < 1 || spec.y[i] < 1) throw PreconditionError("x_i, y_i must be >= 1");
    if (std::accumulate(spec.y.begin(), spec.y.end(), 0) < 2)
        throw PreconditionError("Γ requires Σy >= 2");
    if (spec.k < 1) throw PreconditionError("number of copies must be >= 1");
}

GramLattice gamma_gram(const GammaSpec& spec) {
    validate(spec);
    std::vector<long long> diag;
    for (std::size_t i = 0; i < spec.x.size(); ++i) {
        diag.push_back(-2LL - spec.x[i]);
        diag.insert(diag.end(), static_cast<std::size_t>(spec.y[i] - 1), -2LL);
    }
    const std::size_t n = diag.size();
    IntMatrix block(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) block[i][i] = diag[i];
    for (std::size_t i = 0; i + 1 < n; ++i) block[i][i + 1] += 1, block[i + 1][i] += 1;
    const long long closing = spec.d == 0 ? 1 : -1;
    block[n - 1][0] += closing;
    block[0][n - 1] += closing;
    return GramLattice{orthogonal_sum(block, spec.k), spec, static_cast<int>(n)};
}

IntMatrix orthogonal_sum(const IntMatrix& block, int k) {
    const std::size_t n = block.size();
    const std::size_t N = n * static_cast<std::size_t>(k);
    IntMatrix out(N, std::vector<long long>(N, 0));
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[c * n + i][c * n + j] = block[i][j];
    return out;
}

bool is_symmetric(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (m[i][j] != m[j][i]) return false;
    }
    return true;
}

namespace {

std::vector<std::vector<BigInt>> to_big(const IntMatrix& m, int sign) {
    std::vector<std::vector<BigInt>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) throw PreconditionError("matrix must be square");
        for (long long v : m[i]) a[i].push_back(BigInt(v) * sign);
    }
    return a;
}

}  // namespace

// Bareiss elimination without pivoting: the k-th pivot is the k-th leading
// principal minor of -m.
bool is_negative_definite(const IntMatrix& m) {
    if (!is_symmetric(m)) return false;
    auto a = to_big(m, -1);
    const std::size_t n = a.size();
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return true;
}

BigInt determinant(const IntMatrix& m) {
    auto a = to_big(m, 1);
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

BigInt wu_norm(const IntMatrix& m) {
    BigInt s = 0;
    for (const auto& row : m)
        for (long long v : row) s += v;
    return s;
}

int signature_erle(const NormalForm3& nf) {
    // The balance condition Σ(x_i - y_i) = -4d is exactly what a zero signature
    // tests, so only the shape is checked here.
    if (nf.x.empty() || nf.x.size() != nf.y.size())
        throw PreconditionError("signature requires t >= 1 and |x| = |y|");
    for (std::size_t i = 0; i < nf.x.size(); ++i)
        if (nf.x[i] < 1 || nf.y[i] < 1) throw PreconditionError("signature requires x_i, y_i >= 1");
    const int sx = std::accumulate(nf.x.begin(), nf.x.end(), 0);
    const int sy = std::accumulate(nf.y.begin(), nf.y.end(), 0);
    const int e = 6 * nf.d + sx - sy;
    return 2 * nf.d - e;
}

}  // namespace braidlat
