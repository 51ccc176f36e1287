#include <numeric>
#include <optional>
#include <random>

#include "braidlat/errors.hpp"
#include "braidlat/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace braidlat;

namespace {

GammaSpec random_spec(std::mt19937_64& rng, int max_t = 3, int max_entry = 4, int max_k = 2) {
    std::uniform_int_distribution<int> entry(1, max_entry);
    GammaSpec s;
    s.d = static_cast<int>(rng() % 2);
    const int t = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_t));
    do {
        s.x.assign(static_cast<std::size_t>(t), 0);
        s.y.assign(static_cast<std::size_t>(t), 0);
        for (auto& v : s.x) v = entry(rng);
        for (auto& v : s.y) v = entry(rng);
    } while (std::accumulate(s.y.begin(), s.y.end(), 0) < 2);
    s.k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_k));
    return s;
}

// Random valid normal form: Σx = Σy - 4d with every entry >= 1.
std::optional<NormalForm3> random_nf(std::mt19937_64& rng, int d) {
    const std::size_t t = 1 + rng() % 4;
    NormalForm3 nf{d, std::vector<int>(t, 1), std::vector<int>(t)};
    for (auto& v : nf.y) v = 1 + static_cast<int>(rng() % 5);
    int remaining = std::accumulate(nf.y.begin(), nf.y.end(), 0) - 4 * d - static_cast<int>(t);
    if (remaining < 0) return std::nullopt;
    while (remaining-- > 0) ++nf.x[rng() % t];
    return nf;
}

oracle::Big as_oracle(const BigInt& v) { return oracle::Big(v.str()); }

}  // namespace

TEST_CASE("gamma_gram examples") {
    CHECK(gamma_gram({0, {3}, {3}, 1}).gram == IntMatrix{{-5, 1, 1}, {1, -2, 1}, {1, 1, -2}});
    CHECK(gamma_gram({0, {1, 1}, {1, 1}, 1}).gram == IntMatrix{{-3, 2}, {2, -3}});

    const GramLattice l = gamma_gram({1, {3}, {7}, 1});
    REQUIRE(l.gram.size() == 7);
    CHECK(l.block_size == 7);
    const std::vector<long long> diag{-5, -2, -2, -2, -2, -2, -2};
    for (std::size_t i = 0; i < 7; ++i) CHECK(l.gram[i][i] == diag[i]);
    CHECK(l.gram[0][6] == -1);
    CHECK(l.gram[6][0] == -1);
    CHECK(l.gram[2][3] == 1);
    CHECK(l.gram[0][3] == 0);

    CHECK(gamma_gram({1, {2}, {2}, 1}).gram == IntMatrix{{-4, 0}, {0, -2}});
}

TEST_CASE("gamma_gram rejects invalid specs") {
    CHECK_THROWS_AS(gamma_gram({0, {1}, {1}, 1}), PreconditionError);
    CHECK_THROWS_AS(gamma_gram({0, {1, 2}, {3}, 1}), PreconditionError);
    CHECK_THROWS_AS(gamma_gram({2, {3}, {3}, 1}), PreconditionError);
    CHECK_THROWS_AS(gamma_gram({0, {0}, {3}, 1}), PreconditionError);
    CHECK_THROWS_AS(gamma_gram({0, {3}, {3}, 0}), PreconditionError);
}

TEST_CASE("gamma_gram matches the independent construction") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        const GammaSpec s = random_spec(rng);
        const GramLattice l = gamma_gram(s);
        CHECK(l.gram == oracle::cycle_gram(s.d, s.x, s.y, s.k));
        CHECK(is_symmetric(l.gram));
        for (std::size_t r = 0; r < l.gram.size(); ++r) CHECK(l.gram[r][r] <= -2);
    }
}

TEST_CASE("negative definiteness examples") {
    CHECK(is_negative_definite(gamma_gram({0, {3}, {3}, 1}).gram));
    CHECK_FALSE(is_negative_definite({{-2, 2}, {2, -2}}));
    CHECK_FALSE(is_negative_definite({{1}}));
    CHECK_FALSE(is_negative_definite({{-2, 1}, {1, 0}}));
    CHECK(is_negative_definite({{-1}}));
}

TEST_CASE("every cycle lattice is negative definite") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 400; ++i) {
        const GammaSpec s = random_spec(rng, 4, 5, 2);
        const IntMatrix g = gamma_gram(s).gram;
        CHECK(is_negative_definite(g));
        CHECK(oracle::inertia(g).negative == static_cast<int>(g.size()));
    }
}

TEST_CASE("negative definiteness agrees with rational inertia on random matrices") {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> off(-2, 2), diag(-6, 1);
    int definite = 0;
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + rng() % 5;
        IntMatrix m(n, std::vector<long long>(n, 0));
        for (std::size_t r = 0; r < n; ++r) {
            m[r][r] = diag(rng);
            for (std::size_t c = r + 1; c < n; ++c) m[r][c] = m[c][r] = off(rng);
        }
        const bool expected = oracle::inertia(m).negative == static_cast<int>(n);
        definite += expected;
        CHECK(is_negative_definite(m) == expected);
    }
    CHECK(definite > 50);
}

TEST_CASE("determinant examples") {
    CHECK(determinant(gamma_gram({0, {3}, {3}, 1}).gram) == -9);
    CHECK(determinant(gamma_gram({0, {1, 1}, {1, 1}, 1}).gram) == 5);
    CHECK(determinant(gamma_gram({0, {3}, {3}, 2}).gram) == 81);
    CHECK(determinant({{-2, 2}, {2, -2}}) == 0);
    CHECK(determinant({{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("determinant matches rational elimination") {
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng() % 7;
        IntMatrix m(n, std::vector<long long>(n));
        for (auto& row : m)
            for (auto& v : row) v = entry(rng);
        CHECK(as_oracle(determinant(m)) == oracle::rational_determinant(m));
    }
    for (int i = 0; i < 200; ++i) {
        const IntMatrix g = gamma_gram(random_spec(rng, 3, 6, 3)).gram;
        CHECK(as_oracle(determinant(g)) == oracle::rational_determinant(g));
    }
}

TEST_CASE("determinant is multiplicative over orthogonal sums") {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 200; ++i) {
        GammaSpec s = random_spec(rng, 3, 4, 1);
        const BigInt single = determinant(gamma_gram(s).gram);
        for (int k = 2; k <= 4; ++k) {
            s.k = k;
            CHECK(determinant(gamma_gram(s).gram) == boost::multiprecision::pow(single, static_cast<unsigned>(k)));
        }
    }
    const IntMatrix block{{-2, 1}, {1, -3}};
    CHECK(orthogonal_sum(block, 2) == IntMatrix{{-2, 1, 0, 0}, {1, -3, 0, 0}, {0, 0, -2, 1}, {0, 0, 1, -3}});
}

TEST_CASE("determinant is odd for knot closures") {
    std::mt19937_64 rng(36);
    int knots = 0;
    for (int i = 0; i < 1500; ++i) {
        const int d = static_cast<int>(rng() % 2);
        const auto nf = random_nf(rng, d);
        if (!nf || std::accumulate(nf->y.begin(), nf->y.end(), 0) < 2) continue;
        if (!closure_components(word_of(*nf)).is_knot()) continue;
        ++knots;
        const BigInt det = determinant(gamma_gram({nf->d, nf->x, nf->y, 1}).gram);
        CHECK_MESSAGE(det % 2 != 0, "d=", nf->d);
    }
    CHECK(knots > 100);
}

TEST_CASE("wu_norm examples and identity") {
    CHECK(wu_norm(gamma_gram({1, {3}, {7}, 1}).gram) == -7);
    CHECK(wu_norm(gamma_gram({0, {3}, {3}, 1}).gram) == -3);
    CHECK(wu_norm(gamma_gram({0, {3}, {3}, 3}).gram) == -9);

    std::mt19937_64 rng(37);
    for (int i = 0; i < 500; ++i) {
        const int d = static_cast<int>(rng() % 2);
        const auto nf = random_nf(rng, d);
        if (!nf) continue;
        const int k = 1 + static_cast<int>(rng() % 3);
        const int sy = std::accumulate(nf->y.begin(), nf->y.end(), 0);
        if (sy < 2) continue;
        CHECK(wu_norm(gamma_gram({d, nf->x, nf->y, k}).gram) == -k * sy);
    }
}

TEST_CASE("signature_erle examples") {
    CHECK(signature_erle({1, {3}, {7}}) == 0);
    CHECK(signature_erle({0, {1, 1}, {1, 1}}) == 0);
    CHECK(signature_erle({0, {5}, {3}}) == -2);
}

TEST_CASE("signature of sigma1^5 sigma2^-3 from the Goeritz oracle") {
    CHECK(oracle::goeritz_signature(testsupport::to_oracle(testsupport::W("aaaaaBBB"))) == -2);
    CHECK(oracle::goeritz_signature(testsupport::to_oracle(word_of(NormalForm3{0, {5}, {3}}))) == -2);
}

TEST_CASE("signature_erle agrees with the Goeritz signature on knot closures") {
    std::mt19937_64 rng(38);
    int knots = 0;
    for (int i = 0; i < 1500; ++i) {
        const int d = static_cast<int>(rng() % 3) - 1;
        auto nf = random_nf(rng, d);
        if (!nf) continue;
        const BraidWord w = word_of(*nf);
        if (!closure_components(w).is_knot()) continue;
        ++knots;
        CHECK(signature_erle(*nf) == oracle::goeritz_signature(testsupport::to_oracle(w)));
    }
    CHECK(knots > 100);
}

TEST_CASE("signature_erle vanishes on balanced d=0 forms") {
    std::mt19937_64 rng(39);
    for (int i = 0; i < 200; ++i) {
        const auto nf = random_nf(rng, 0);
        REQUIRE(nf);
        CHECK(signature_erle(*nf) == 0);
    }
}
