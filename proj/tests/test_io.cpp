#include <gtest/gtest.h>

#include "gca/io.hpp"

using namespace gca;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_seed(text, "seed.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(SeedFile, ExplicitAndPrincipalForms) {
  const SeedSpec s = parse_seed(R"({"n": 2, "r": [1, 2], "B": [[0, -1], [1, 0]]})");
  EXPECT_EQ(s.md.m(), 2);
  EXPECT_EQ(s.bt, (IntMatrix{{0, -1}, {1, 0}}));
  EXPECT_EQ(s.D, (Vec{1, 1}));
  EXPECT_FALSE(s.lambda);

  const SeedSpec p = parse_seed(R"({"n": 2, "r": [1, 1], "coefficients": "principal", "B": [0, -1, 1, 0]})");
  EXPECT_EQ(p.md.m(), 4);
  EXPECT_EQ(p.bt, (IntMatrix{{0, -1}, {1, 0}, {1, 0}, {0, 1}}));
  ASSERT_TRUE(p.lambda);
  const auto cp = p.compatible_pair();
  ASSERT_TRUE(cp);
  EXPECT_FALSE(cp->violation());
}

TEST(SeedFile, FlatAndNestedMatricesAgree) {
  const auto a = parse_seed(R"({"n": 2, "m": 3, "r": [1, 2], "B": [[0, -1], [1, 0], [1, -1]]})");
  const auto b = parse_seed(R"({"n": 2, "m": 3, "r": [1, 2], "B": [0, -1, 1, 0, 1, -1]})");
  EXPECT_EQ(a.bt, b.bt);
}

TEST(SeedFile, ErrorsCarryPositions) {
  EXPECT_EQ(error_of("{\n  \"n\": 2,\n  \"r\": [1, 1],\n  \"B\": [[0, 1], [-1, 0]],\n  \"colour\": 3\n}"),
            "seed.json:5:3: unknown key 'colour'");
  EXPECT_EQ(error_of("{\n  \"n\": 2,\n  \"r\": [1, 1]\n  \"B\": []\n}"), "seed.json:4:5: malformed JSON");
  EXPECT_EQ(error_of(R"({"n": 2, "r": [1, 1]})"), "seed.json:1:1: missing required key 'B'");
  EXPECT_NE(error_of("{\"n\": 2,\n \"r\": [1, 1],\n \"B\": [[0, 1], [1, 0]]}").find("seed.json:3:2: "), std::string::npos);
  EXPECT_NE(error_of(R"({"n": 2, "r": [1, 1], "B": [[0, 1]]})").find("must have 2 rows"), std::string::npos);
  EXPECT_NE(error_of(R"({"n": 2, "r": [1, 0], "B": [[0, 1], [-1, 0]]})"), "");
  EXPECT_NE(error_of(R"({"n": 2, "r": [1, 1], "coefficients": "framed", "B": [[0, 1], [-1, 0]]})"), "");
}

TEST(SeedFile, CorruptedLambdaIsAcceptedAtLoad) {
  const SeedSpec s = load_seed_file(std::string(GCA_SAMPLES_DIR) + "/corrupted_lambda.json");
  const auto cp = s.compatible_pair();
  ASSERT_TRUE(cp);
  EXPECT_TRUE(cp->violation());
  EXPECT_THROW(cp->validate(), CompatibilityBroken);
}

TEST(SeedFile, ShippedSamplesLoad) {
  for (const char* name : {"rank2_r12.json", "rank2_r22.json", "a2_principal.json", "rank1_r2.json",
                           "rank2_r12_frozen.json"}) {
    const SeedSpec s = load_seed_file(std::string(GCA_SAMPLES_DIR) + "/" + name);
    if (const auto cp = s.compatible_pair()) {
      EXPECT_FALSE(cp->violation()) << name;
    }
  }
  EXPECT_THROW(load_seed_file("/nonexistent/seed.json"), ParseError);
}

TEST(Json, WordsAndIntegers) {
  EXPECT_EQ(parse_word("2,1,2", 2), (Word{1, 0, 1}));
  EXPECT_EQ(parse_word("", 2), Word{});
  EXPECT_THROW(parse_word("3", 2), ParseError);
  EXPECT_THROW(parse_word("1,x", 2), ParseError);
  EXPECT_THROW(parse_word("1,,2", 2), ParseError);
  EXPECT_EQ(word_to_json({1, 0, 1}).dump(), "[2,1,2]");

  const Integer big("123456789012345678901234567890");
  EXPECT_EQ(int_to_json(big).dump(), "\"123456789012345678901234567890\"");
  EXPECT_EQ(int_from_json(int_to_json(big)), big);
  EXPECT_EQ(int_from_json(int_to_json(Integer(-7))), -7);
  EXPECT_THROW(int_from_json(json("seven")), ParseError);
}

TEST(Json, PolynomialsRoundTrip) {
  const auto amb = make_ambient("x", 2, {1, 2});
  const LaurentPoly x1 = LaurentPoly::variable(amb, 0), x2 = LaurentPoly::variable(amb, 1, -1);
  const LaurentPoly p = (x1 * x1 + LaurentPoly::zsym(amb, 1, 1) * x1 + LaurentPoly::one(amb)) * x2 +
                        LaurentPoly::constant(amb, Integer("99999999999999999999999"));
  const json j = poly_to_json(p);
  EXPECT_EQ(poly_from_json(j), p);
  EXPECT_EQ(poly_from_json(json::parse(j.dump())), p);
  EXPECT_EQ(j["ambient"]["r"], json::array({1, 2}));
  EXPECT_THROW(poly_from_json(json::object()), ParseError);
}
