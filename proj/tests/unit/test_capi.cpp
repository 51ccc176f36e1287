// Exercises the shared library only through its C interface.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "braidlat/braidlat.h"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Owned {
    char* p = nullptr;
    ~Owned() { braidlat_string_free(p); }
    json parse() const { return json::parse(p); }
};

struct Word {
    braidlat_word* w = nullptr;
    explicit Word(const char* text) { REQUIRE(braidlat_word_parse(text, &w) == BRAIDLAT_OK); }
    ~Word() { braidlat_word_free(w); }
};

struct ConfigHandle {
    braidlat_config* c = braidlat_config_new();
    ~ConfigHandle() { braidlat_config_free(c); }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(braidlat_version()) == "1.0.0");
    CHECK(std::string(braidlat_status_name(BRAIDLAT_OK)) == "ok");
    CHECK(std::string(braidlat_status_name(BRAIDLAT_ERR_BUDGET)) == "budget");
    braidlat_string_free(nullptr);
}

TEST_CASE("word handles") {
    Word w("s1 s2^-1 s1 s2^-1");
    Owned printed;
    REQUIRE(braidlat_word_print(w.w, &printed.p) == BRAIDLAT_OK);
    CHECK(std::string(printed.p) == "aBaB");
    int e = 99, comps = 0;
    CHECK(braidlat_word_exponent_sum(w.w, &e) == BRAIDLAT_OK);
    CHECK(e == 0);
    CHECK(braidlat_word_components(w.w, &comps) == BRAIDLAT_OK);
    CHECK(comps == 1);

    braidlat_word* bad = nullptr;
    CHECK(braidlat_word_parse("a s2", &bad) == BRAIDLAT_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK_FALSE(std::string(braidlat_last_error()).empty());
    CHECK(braidlat_word_parse(nullptr, &bad) == BRAIDLAT_ERR_ARGUMENT);
    CHECK(braidlat_word_exponent_sum(nullptr, &e) == BRAIDLAT_ERR_ARGUMENT);
    braidlat_word_free(nullptr);
}

TEST_CASE("config") {
    ConfigHandle cfg;
    CHECK(braidlat_config_set_search_budget(cfg.c, 42) == BRAIDLAT_OK);
    CHECK(braidlat_config_search_budget(cfg.c) == 42);
    CHECK(braidlat_config_set_search_budget(cfg.c, 0) == BRAIDLAT_ERR_ARGUMENT);
    CHECK(braidlat_config_set_threads(cfg.c, 0) == BRAIDLAT_ERR_ARGUMENT);
    CHECK(braidlat_config_set_threads(cfg.c, 4) == BRAIDLAT_OK);
    CHECK(braidlat_config_set_search_budget(nullptr, 5) == BRAIDLAT_ERR_ARGUMENT);

    ::setenv("BRAIDLAT_BUDGET", "777", 1);
    ConfigHandle from_env;
    CHECK(braidlat_config_search_budget(from_env.c) == 777);
    ::unsetenv("BRAIDLAT_BUDGET");
}

TEST_CASE("classify through the C interface") {
    Word w("abbaaaaBBBBB");
    Owned out;
    REQUIRE(braidlat_classify(nullptr, w.w, &out.p) == BRAIDLAT_OK);
    const json v = out.parse();
    CHECK(v["family"] == "Family1");
    CHECK(v["certificates"]["blowup_chain"]["moves"].size() == 5);

    Word link("aBBaaaBB");
    Owned out2;
    REQUIRE(braidlat_classify(nullptr, link.w, &out2.p) == BRAIDLAT_OK);
    CHECK(out2.parse()["family"] == "NotAKnot");

    Owned nf;
    REQUIRE(braidlat_word_normal_form(nullptr, w.w, &nf.p) == BRAIDLAT_OK);
    CHECK(nf.parse()["status"] == "ok");
}

TEST_CASE("batch through the C interface") {
    Owned out;
    REQUIRE(braidlat_classify_csv(nullptr, "name,braid\nf8,aBaB\nbad,a s2\nnine,aaaBaBBB\n", &out.p) ==
            BRAIDLAT_OK);
    std::vector<json> rows;
    std::string text(out.p);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        rows.push_back(json::parse(text.substr(pos, nl - pos)));
        pos = nl == std::string::npos ? text.size() : nl + 1;
    }
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["family"] == "Family3");
    CHECK(rows[1]["error"] == "parse");
    CHECK(rows[2]["family"] == "Family2");

    Owned bad;
    CHECK(braidlat_classify_csv(nullptr, "word\nab\n", &bad.p) == BRAIDLAT_ERR_PARSE);
    CHECK(bad.p == nullptr);
}

TEST_CASE("lattice calls") {
    const int x[] = {3}, y[] = {3};
    Owned g;
    REQUIRE(braidlat_gram(0, x, y, 1, 1, &g.p) == BRAIDLAT_OK);
    const json j = g.parse();
    CHECK(j["gram"] == json::parse("[[-5,1,1],[1,-2,1],[1,1,-2]]"));
    CHECK(j["determinant"] == -9);
    CHECK(j["wu_norm"] == -3);

    int sig = 99;
    const int x5[] = {5};
    CHECK(braidlat_signature(0, x5, y, 1, &sig) == BRAIDLAT_OK);
    CHECK(sig == -2);

    Owned invalid;
    const int one[] = {1};
    CHECK(braidlat_gram(0, one, one, 1, 1, &invalid.p) == BRAIDLAT_ERR_PRECONDITION);
    CHECK(braidlat_gram(0, nullptr, y, 1, 1, &invalid.p) == BRAIDLAT_ERR_ARGUMENT);
}

TEST_CASE("embed through the C interface") {
    const int x[] = {3}, y[] = {7};
    Owned found;
    REQUIRE(braidlat_embed(nullptr, 1, x, y, 1, 1, 1, &found.p) == BRAIDLAT_OK);
    const json j = found.parse();
    CHECK(j["result"] == "found");
    CHECK(j["reduction"]["pipeline"] == "semipositive");

    ConfigHandle tight;
    braidlat_config_set_search_budget(tight.c, 1);
    Owned budget;
    REQUIRE(braidlat_embed(tight.c, 1, x, y, 1, 1, 0, &budget.p) == BRAIDLAT_OK);
    CHECK(budget.parse()["result"] == "budget");

    const int cx[] = {2, 1, 2, 2}, cy[] = {2, 1, 1, 3};
    Owned failing;
    CHECK(braidlat_embed(nullptr, 0, cx, cy, 4, 1, 1, &failing.p) == BRAIDLAT_ERR_INTERNAL);
}

TEST_CASE("string calls") {
    Owned chain;
    REQUIRE(braidlat_blowdown("[5,1,2,2,2,2,1]", &chain.p) == BRAIDLAT_OK);
    CHECK(chain.parse()["iterated_blowup"] == true);

    Owned moved;
    REQUIRE(braidlat_blowup("[1,1,1]", "interior(1)", &moved.p) == BRAIDLAT_OK);
    CHECK(moved.parse()["result"] == json::parse("[2,1,2,1]"));
    Owned bad_move;
    CHECK(braidlat_blowup("[1,1,1]", "sideways", &bad_move.p) == BRAIDLAT_ERR_PARSE);

    Owned f1;
    REQUIRE(braidlat_family1_check("[5,2,2,2,2,2,2]", &f1.p) == BRAIDLAT_OK);
    CHECK(f1.parse()["family1"] == true);

    Owned exp;
    REQUIRE(braidlat_expand("[-2,-3,-5,-2]", &exp.p) == BRAIDLAT_OK);
    CHECK(exp.parse()["expandable"] == true);

    Owned gen;
    REQUIRE(braidlat_family2gen(nullptr, "[B]", &gen.p) == BRAIDLAT_OK);
    CHECK(gen.parse()["crosscheck"] == true);

    Owned garbage;
    CHECK(braidlat_blowdown("[5,,1]", &garbage.p) == BRAIDLAT_ERR_PARSE);
}

TEST_CASE("last error is per thread") {
    braidlat_word* w = nullptr;
    REQUIRE(braidlat_word_parse("xyz", &w) == BRAIDLAT_ERR_PARSE);
    const std::string main_error = braidlat_last_error();
    std::string other;
    std::thread t([&] {
        braidlat_word* v = nullptr;
        braidlat_word_parse("ab", &v);
        braidlat_word_free(v);
        other = braidlat_last_error();
    });
    t.join();
    CHECK(other.empty());
    CHECK(std::string(braidlat_last_error()) == main_error);
}
