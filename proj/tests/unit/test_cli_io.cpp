#include <cstdlib>
#include <limits>

#include "braidlat/cli_io.hpp"
#include "braidlat/errors.hpp"
#include "braidlat/serialize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace braidlat;

TEST_CASE("parse_knot_csv") {
    const auto rows = parse_knot_csv("name,braid\nk1,aBaB\r\n\"k,2\",\"s1 s2^-1 \"\"x\"\"\"\n\nk3,ab\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].name == "k1");
    CHECK(rows[0].braid == "aBaB");
    CHECK(rows[1].name == "k,2");
    CHECK(rows[1].braid == "s1 s2^-1 \"x\"");
    CHECK(rows[2].braid == "ab");
    CHECK_FALSE(rows[0].expected);

    const auto with_expected = parse_knot_csv("name,braid,expected\nf8,aBaB,Family3\nu,ab,\n");
    REQUIRE(with_expected.size() == 2);
    CHECK(with_expected[0].expected == std::optional<std::string>("Family3"));
    CHECK_FALSE(with_expected[1].expected);

    const auto missing = parse_knot_csv("name,braid\nlonely\n");
    REQUIRE(missing.size() == 1);
    CHECK_FALSE(missing[0].row_error.empty());

    CHECK(parse_knot_csv("name,braid\n").empty());
    CHECK(parse_knot_csv("\xEF\xBB\xBFname,braid\nk,ab\n").size() == 1);
    CHECK_THROWS_AS(parse_knot_csv(""), ParseError);
    CHECK_THROWS_AS(parse_knot_csv("knot,word\nk,ab\n"), ParseError);
    CHECK_THROWS_AS(parse_knot_csv("name,braid\n\"open,ab\n"), ParseError);
}

TEST_CASE("parse_int_list") {
    CHECK(parse_int_list("1,2,3") == std::vector<int>{1, 2, 3});
    CHECK(parse_int_list("[4, 5]") == std::vector<int>{4, 5});
    CHECK(parse_int_list("(7)") == std::vector<int>{7});
    CHECK(parse_int_list(" -2 ") == std::vector<int>{-2});
    CHECK_THROWS_AS(parse_int_list(""), ParseError);
    CHECK_THROWS_AS(parse_int_list("1,,2"), ParseError);
    CHECK_THROWS_AS(parse_int_list("1 2"), ParseError);
    CHECK_THROWS_AS(parse_int_list("a"), ParseError);
}

TEST_CASE("BRAIDLAT_BUDGET overrides the search budget") {
    ::unsetenv("BRAIDLAT_BUDGET");
    CHECK(default_config().search_budget == kDefaultEmbeddingBudget);
    ::setenv("BRAIDLAT_BUDGET", "1234", 1);
    CHECK(default_config().search_budget == 1234);
    CHECK(default_config().embedding().budget == 1234);
    ::setenv("BRAIDLAT_BUDGET", "0", 1);
    CHECK(default_config().search_budget == kDefaultEmbeddingBudget);
    ::setenv("BRAIDLAT_BUDGET", "12x", 1);
    CHECK(default_config().search_budget == kDefaultEmbeddingBudget);
    ::unsetenv("BRAIDLAT_BUDGET");
}

TEST_CASE("config conversions") {
    Config c;
    c.threads = 3;
    c.conjugacy_budget = 77;
    c.record_timing = true;
    CHECK(c.embedding().threads == 3);
    CHECK(c.embedding().record_timing);
    CHECK(c.classifier().conjugacy_budget == 77);
}

TEST_CASE("big integers switch to strings past the safe range") {
    const BigInt safe = (BigInt(1) << 53) - 1;
    CHECK(big_to_json(safe).is_number_integer());
    CHECK(big_to_json(-safe).is_number_integer());
    CHECK(big_to_json(safe + 1) == Json("9007199254740992"));
    CHECK(big_to_json(-(safe + 1)) == Json("-9007199254740992"));
    CHECK(big_to_json(BigInt(1) << 80).is_string());
}

TEST_CASE("verdict JSON") {
    const Json f1 = to_json(classify_knot(testsupport::W("abbaaaaBBBBB")));
    CHECK(f1["family"] == "Family1");
    CHECK(f1["normal_form"]["d"] == 1);
    CHECK(f1["certificates"]["blowup_chain"]["strings"].back() == Json::array({5, 1, 2, 2, 2, 2, 1}));
    CHECK(f1.dump() == to_json(classify_knot(testsupport::W("abbaaaaBBBBB"))).dump());

    const Json f3 = to_json(classify_knot(testsupport::W("aBaB")));
    CHECK(f3["family"] == "Family3");

    BatchEntry bad;
    bad.name = "broken";
    bad.error = "parse error at 2: unexpected character";
    bad.error_code = 2;
    const Json row = to_json(bad);
    CHECK(row["name"] == "broken");
    CHECK(row["error"] == "parse");
}

TEST_CASE("embedding JSON") {
    const EmbeddingResult r = find_embedding(gamma_gram({0, {3}, {3}, 1}).gram);
    const Json j = to_json(r);
    CHECK(j["result"] == "found");
    CHECK(j["certificate"]["index"] == 3);
    CHECK(j["certificate"]["vectors"].size() == 3);
    CHECK_FALSE(j["stats"].contains("wall_ms"));

    EmbeddingOptions tight;
    tight.budget = 1;
    CHECK(to_json(find_embedding(gamma_gram({1, {3}, {7}, 1}).gram, tight))["result"] == "budget");
}
