#include <numeric>
#include <random>

#include "braidlat/embedding.hpp"
#include "braidlat/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace braidlat;

namespace {

const IntMatrix kTriangle{{-2, 1, 1}, {1, -2, 1}, {1, 1, -5}};

EmbeddingCertificate triangle_certificate() {
    EmbeddingCertificate c;
    c.gram = kTriangle;
    c.vectors = {{1, -1, 0}, {-1, 0, 1}, {-1, 0, -2}};
    c.index = 3;
    c.wu = {-1, -1, -1};
    return c;
}

// Every cycle spec with Σy in [2, max_n], entries of x at most max_x.
std::vector<GammaSpec> small_specs(int max_n, int max_x) {
    std::vector<GammaSpec> out;
    for (int d = 0; d <= 1; ++d)
        for (int n = 2; n <= max_n; ++n)
            for (int t = 1; t <= n; ++t) {
                std::vector<int> y(static_cast<std::size_t>(t), 1), x(static_cast<std::size_t>(t), 1);
                auto next = [](std::vector<int>& v, int hi) {
                    for (auto& e : v) {
                        if (e < hi) {
                            ++e;
                            return true;
                        }
                        e = 1;
                    }
                    return false;
                };
                do {
                    if (std::accumulate(y.begin(), y.end(), 0) != n) continue;
                    do out.push_back({d, x, y, 1});
                    while (next(x, max_x));
                } while (next(y, n));
            }
    return out;
}

}  // namespace

TEST_CASE("pairing") {
    CHECK(pairing({1, -1, 0}, {-1, 0, 1}) == 1);
    CHECK(pairing({2, 0}, {2, 0}) == -4);
    CHECK(pairing({}, {}) == 0);
}

TEST_CASE("verify_certificate") {
    CHECK(verify_certificate(triangle_certificate()));

    auto flipped = triangle_certificate();
    flipped.vectors[2][2] = 2;
    flipped.wu = {-1, -1, 3};
    CHECK_FALSE(verify_certificate(flipped));

    auto wrong_index = triangle_certificate();
    wrong_index.index = 5;
    CHECK_FALSE(verify_certificate(wrong_index));

    auto wrong_wu = triangle_certificate();
    wrong_wu.wu = {1, 1, 1};
    CHECK_FALSE(verify_certificate(wrong_wu));

    CHECK(verify_certificate(EmbeddingCertificate{{}, {}, 1, {}}));
}

TEST_CASE("odd_index") {
    CHECK(odd_index(triangle_certificate().vectors) == BigInt(3));
    CHECK(odd_index({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}) == BigInt(1));
    CHECK_FALSE(odd_index({{1, -1, 0}, {-1, 1, 0}, {0, 0, 1}}));
    CHECK(odd_index({{2, 0}, {0, 1}}) == BigInt(2));
}

TEST_CASE("gram_is_circular") {
    CHECK(gram_is_circular(kTriangle));
    CHECK(gram_is_circular(gamma_gram({1, {3}, {7}, 2}).gram));
    CHECK_FALSE(gram_is_circular(gamma_gram({0, {1, 1}, {1, 1}, 1}).gram));
    CHECK_FALSE(gram_is_circular({{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}));
}

TEST_CASE("find_embedding examples") {
    const auto tri = find_embedding(kTriangle);
    REQUIRE(tri.status == EmbeddingStatus::Found);
    CHECK(verify_certificate(*tri.certificate));
    CHECK(tri.certificate->index == 3);
    CHECK(tri.wu_normalized);

    const auto slice = find_embedding(gamma_gram({1, {3}, {7}, 1}).gram);
    REQUIRE(slice.status == EmbeddingStatus::Found);
    CHECK(verify_certificate(*slice.certificate));

    const auto none = find_embedding(gamma_gram({0, {1, 3}, {2, 2}, 1}).gram);
    CHECK(none.status == EmbeddingStatus::None);
    CHECK_FALSE(none.certificate);
    CHECK_FALSE(oracle::reference_embedding(gamma_gram({0, {1, 3}, {2, 2}, 1}).gram).exists);
}

TEST_CASE("budget exhaustion is distinct from absence") {
    EmbeddingOptions tight;
    tight.budget = 1;
    const auto r = find_embedding(gamma_gram({1, {3}, {7}, 1}).gram, tight);
    CHECK(r.status == EmbeddingStatus::BudgetExceeded);
    CHECK_FALSE(r.certificate);

    tight.budget = 5;
    CHECK(find_embedding(gamma_gram({0, {1, 3}, {2, 2}, 1}).gram, tight).status ==
          EmbeddingStatus::BudgetExceeded);
}

TEST_CASE("timing is recorded only on request") {
    const IntMatrix g = gamma_gram({0, {3}, {3}, 1}).gram;
    CHECK_FALSE(find_embedding(g).stats.wall_ms);
    EmbeddingOptions timed;
    timed.record_timing = true;
    CHECK(find_embedding(g, timed).stats.wall_ms);
}

static void compare_with_reference(const std::vector<GammaSpec>& specs) {
    std::size_t found = 0;
    for (const GammaSpec& s : specs) {
        const IntMatrix g = gamma_gram(s).gram;
        const auto r = find_embedding(g);
        REQUIRE(r.status != EmbeddingStatus::BudgetExceeded);
        const bool expected = oracle::reference_embedding(g).exists;
        CHECK_MESSAGE((r.status == EmbeddingStatus::Found) == expected, "d=", s.d, " n=", g.size());
        if (r.certificate) {
            ++found;
            CHECK(verify_certificate(*r.certificate));
        }
    }
    CHECK(found > 10);
}

TEST_CASE("find_embedding agrees with the exhaustive reference search") {
    auto specs = small_specs(5, 3);
    for (const GammaSpec& s : small_specs(6, 2))
        if (std::accumulate(s.y.begin(), s.y.end(), 0) == 6) specs.push_back(s);
    CHECK(specs.size() > 500);
    compare_with_reference(specs);
}

// Registered as its own ctest entry; a few minutes of exhaustive search.
TEST_CASE("find_embedding agrees with the exhaustive reference search at rank 7" * doctest::skip()) {
    std::vector<GammaSpec> specs;
    for (const GammaSpec& s : small_specs(7, 2))
        if (std::accumulate(s.y.begin(), s.y.end(), 0) == 7) specs.push_back(s);
    compare_with_reference(specs);
}

TEST_CASE("find_embedding agrees with the reference search on two copies") {
    for (const GammaSpec& base : small_specs(3, 3)) {
        GammaSpec s = base;
        s.k = 2;
        const IntMatrix g = gamma_gram(s).gram;
        const auto r = find_embedding(g);
        REQUIRE(r.status != EmbeddingStatus::BudgetExceeded);
        CHECK((r.status == EmbeddingStatus::Found) == oracle::reference_embedding(g).exists);
    }
}

TEST_CASE("find_embedding agrees with the reference search on random definite forms") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> off(-1, 1), diag(-5, -1);
    int definite = 0, embeddable = 0;
    for (int i = 0; i < 1500 && definite < 300; ++i) {
        const std::size_t n = 1 + rng() % 4;
        IntMatrix m(n, std::vector<long long>(n, 0));
        for (std::size_t r = 0; r < n; ++r) {
            m[r][r] = diag(rng);
            for (std::size_t c = r + 1; c < n; ++c) m[r][c] = m[c][r] = off(rng);
        }
        if (!is_negative_definite(m)) continue;
        ++definite;
        const auto r = find_embedding(m);
        REQUIRE(r.status != EmbeddingStatus::BudgetExceeded);
        const bool expected = oracle::reference_embedding(m).exists;
        embeddable += expected;
        CHECK((r.status == EmbeddingStatus::Found) == expected);
        if (r.certificate) CHECK(verify_certificate(*r.certificate));
    }
    CHECK(definite >= 300);
    CHECK(embeddable > 20);
}

TEST_CASE("certificates are sound on larger specs") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> entry(1, 4);
    int found = 0;
    for (int i = 0; i < 60; ++i) {
        GammaSpec s;
        s.d = static_cast<int>(rng() % 2);
        const std::size_t t = 1 + rng() % 3;
        s.x.resize(t);
        s.y.resize(t);
        for (auto& v : s.x) v = entry(rng);
        for (auto& v : s.y) v = entry(rng);
        if (std::accumulate(s.y.begin(), s.y.end(), 0) < 2) continue;
        const auto r = find_embedding(gamma_gram(s).gram);
        if (r.certificate) {
            ++found;
            CHECK(verify_certificate(*r.certificate));
            CHECK(r.certificate->index % 2 == 1);
        }
    }
    CHECK(found > 0);
}

TEST_CASE("result does not depend on the thread count") {
    const std::vector<GammaSpec> specs{{1, {3}, {7}, 1},       {1, {2, 2}, {3, 3}, 1}, {0, {2, 2}, {1, 3}, 1},
                                       {0, {1, 3}, {2, 2}, 1}, {0, {1, 1}, {1, 1}, 2}, {1, {1, 3}, {4, 4}, 1},
                                       {0, {2, 1, 2, 2}, {2, 1, 1, 3}, 1}};
    for (const GammaSpec& s : specs) {
        const IntMatrix g = gamma_gram(s).gram;
        EmbeddingOptions one, four;
        four.threads = 4;
        const auto a = find_embedding(g, one);
        const auto b = find_embedding(g, four);
        const auto c = find_embedding(g, four);
        CHECK(a.status == b.status);
        CHECK(b.status == c.status);
        if (a.certificate && b.certificate && c.certificate) {
            CHECK(a.certificate->vectors == b.certificate->vectors);
            CHECK(b.certificate->vectors == c.certificate->vectors);
            CHECK(a.certificate->index == b.certificate->index);
        }
        CHECK(a.stats.nodes == b.stats.nodes);
    }
}
