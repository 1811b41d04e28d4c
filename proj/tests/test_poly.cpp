#include <gtest/gtest.h>

#include <random>

#include "gca/poly.hpp"
#include "support.hpp"

using namespace gca;

namespace {

struct PolyFixture : ::testing::Test {
  AmbientPtr x = make_ambient("x", 2, {1, 2});
  AmbientPtr yh = make_ambient("yh", 2, {1, 2});
  LaurentPoly X(int i, int e = 1) const { return LaurentPoly::variable(x, i, e); }
  LaurentPoly Y(int i, int e = 1) const { return LaurentPoly::variable(yh, i, e); }
  LaurentPoly c(AmbientPtr a, int v) const { return LaurentPoly::constant(a, v); }
};

}  // namespace

TEST_F(PolyFixture, AdditionCancelsAndMerges) {
  EXPECT_EQ((X(0) + c(x, 1)) + c(x, -1), X(0));
  const LaurentPoly p = X(0) * X(1) + c(x, 3);
  EXPECT_EQ(p + LaurentPoly::zero(x), p);
  const LaurentPoly z = LaurentPoly::zsym(x, 1, 1) * X(1);
  EXPECT_EQ(to_string(z + z), "2*z[2,1]*x2");
}

TEST_F(PolyFixture, MultiplicationBasics) {
  EXPECT_EQ((X(0) + X(1)) * c(x, 1), X(0) + X(1));
  EXPECT_TRUE((X(0, -1) * X(0)).is_one());
  const LaurentPoly s = c(yh, 1) + Y(1);
  EXPECT_EQ(to_string(s * s), "yh2^2 + 2*yh2 + 1");
}

TEST_F(PolyFixture, AmbientMismatchIsStructural) {
  EXPECT_THROW(X(0) + Y(0), StructuralError);
  EXPECT_THROW(X(0) * Y(0), StructuralError);
}

TEST_F(PolyFixture, ZSymbolsAreCanonical) {
  const auto a = make_ambient("x", 1, {4});
  EXPECT_EQ(LaurentPoly::zsym(a, 0, 1), LaurentPoly::zsym(a, 0, 3));
  EXPECT_TRUE(LaurentPoly::zsym(a, 0, 0).is_one());
  EXPECT_TRUE(LaurentPoly::zsym(a, 0, 4).is_one());
  EXPECT_EQ(a->z().size(), 2);
  EXPECT_THROW(LaurentPoly::zsym(a, 0, 5), StructuralError);
}

TEST_F(PolyFixture, ExactDivision) {
  const LaurentPoly num = X(0, 2) - X(1, 2);
  EXPECT_EQ(div_exact(num, X(0) - X(1)), X(0) + X(1));
  EXPECT_EQ(div_exact(num, c(x, 1)), num);
  const LaurentPoly f = c(yh, 1) + LaurentPoly::zsym(yh, 1, 1) * Y(1) + Y(1, 2);
  EXPECT_TRUE(div_exact(f, f).is_one());
}

TEST_F(PolyFixture, DivisionFailureCarriesRemainder) {
  try {
    div_exact(X(0) * X(0) + c(x, 1), X(0) + c(x, 1));
    FAIL() << "expected NotDivisible";
  } catch (const NotDivisible& e) {
    EXPECT_FALSE(e.remainder().empty());
    EXPECT_NE(e.remainder(), "0");
  }
  EXPECT_THROW(div_exact(X(0), c(x, 2)), NotDivisible);
  EXPECT_THROW(div_exact(X(0), LaurentPoly::zero(x)), StructuralError);
}

TEST_F(PolyFixture, MaxDivisorMonomial) {
  EXPECT_EQ(max_divisor_monomial(c(yh, 1)), (Vec{0, 0}));
  const LaurentPoly f = c(yh, 1) + LaurentPoly::zsym(yh, 1, 1) * Y(1) + Y(1, 2);
  EXPECT_EQ(max_divisor_monomial(f), (Vec{0, 2}));
  EXPECT_EQ(max_divisor_monomial(c(yh, 1) + Y(0) + Y(1)), std::nullopt);
  EXPECT_EQ(max_divisor_monomial(c(yh, 1) + Y(0).scaled(2)), std::nullopt);
}

TEST_F(PolyFixture, TropicalEvaluation) {
  const LaurentPoly f = c(yh, 1) + LaurentPoly::zsym(yh, 1, 1) * Y(1) + Y(1, 2);
  EXPECT_EQ(trop_eval(PositiveFraction::of_polynomial(f), {0, 1}), 2);
  EXPECT_EQ(trop_eval(PositiveFraction::one(yh), {3, -7}), 0);
  const LaurentPoly g = c(yh, 1) + Y(0);
  EXPECT_EQ(trop_eval(PositiveFraction(g, g), {5, 0}), 0);
  EXPECT_EQ(trop_eval(PositiveFraction(c(yh, 1), g), {-5, 0}), 0);
  EXPECT_EQ(trop_eval(PositiveFraction(c(yh, 1), g), {5, 0}), -5);
}

TEST_F(PolyFixture, PositiveFractionValidation) {
  EXPECT_THROW(PositiveFraction(c(yh, 1) - Y(0), c(yh, 1)), StructuralError);
  EXPECT_THROW(PositiveFraction(c(yh, 2) + Y(0), c(yh, 1)), StructuralError);
  EXPECT_THROW(PositiveFraction(c(yh, 1) + Y(0, -1), c(yh, 1)), StructuralError);
}

TEST_F(PolyFixture, RationalFunctionEquality) {
  const RationalFunction a(X(0) + X(1), X(1));
  const RationalFunction b((X(0) + X(1)) * (X(0) + c(x, 1)), X(1) * (X(0) + c(x, 1)));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.is_laurent());
  EXPECT_EQ(*b.as_laurent(), X(0) * X(1, -1) + c(x, 1));
}

TEST_F(PolyFixture, TermLimitIsEnforced) {
  const LaurentPoly p = c(x, 1) + X(0) + X(1) + X(0) * X(1);
  ScopedLimits guard({5, 0});
  EXPECT_THROW(pow(p, 4), TermLimitExceeded);
}

TEST_F(PolyFixture, EvaluationAtAPoint) {
  const LaurentPoly p = X(0, 2) * X(1, -1) + LaurentPoly::zsym(x, 1, 1);
  EXPECT_EQ(evaluate(p, {Rational(3), Rational(2)}, {Rational(5)}), Rational(9, 2) + 5);
}

// ---------------------------------------------------------------------------
// Randomized ring axioms and division round trips.

TEST(PolyProperties, RingAxiomsOnRandomPolynomials) {
  const auto amb = make_ambient("x", 3, {2, 3});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing_support::random_poly(rng, amb, 6, -3, 3);
    const auto b = testing_support::random_poly(rng, amb, 6, -3, 3);
    const auto c = testing_support::random_poly(rng, amb, 6, -3, 3);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(PolyProperties, DivisionUndoesMultiplication) {
  const auto amb = make_ambient("x", 3, {2, 3});
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing_support::random_poly(rng, amb, 6, -3, 3);
    auto b = testing_support::random_poly(rng, amb, 6, -3, 3);
    if (b.is_zero()) b = LaurentPoly::one(amb);
    ASSERT_EQ(div_exact(a * b, b), a) << to_string(a) << " / " << to_string(b);
  }
}

TEST(PolyProperties, MaxDivisorMatchesBruteForce) {
  const auto amb = make_ambient("yh", 3, {2});
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    auto f = testing_support::random_poly(rng, amb, 5, 0, 3, /*nonnegative=*/true);
    f = f + LaurentPoly::one(amb);
    // brute force: a support exponent divisible by every other, with coefficient exactly 1
    std::optional<Vec> expect;
    for (const auto& e : support(f)) {
      bool dominates = true;
      for (const auto& o : support(f))
        for (int i = 0; i < 3; ++i) dominates = dominates && o[i] <= e[i];
      if (dominates && coefficient(f, e).is_one()) expect = Vec{e[0], e[1], e[2]};
    }
    ASSERT_EQ(max_divisor_monomial(f), expect) << to_string(f);
  }
}

TEST(PolyProperties, TropEvalIgnoresCommonFactors) {
  const auto amb = make_ambient("yh", 3, {2});
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const auto num = testing_support::random_positive_poly(rng, amb, 4, 3);
    const auto den = testing_support::random_positive_poly(rng, amb, 4, 3);
    const auto common = testing_support::random_positive_poly(rng, amb, 4, 3);
    Vec h(3);
    for (auto& v : h) v = testing_support::uniform(rng, -4, 4);
    ASSERT_EQ(trop_eval(PositiveFraction(num, den), h), trop_eval(PositiveFraction(num * common, den * common), h));
  }
}

TEST(PolyProperties, TropEvalOfPolynomialIsLinearOnNonnegativeVectors) {
  const auto amb = make_ambient("yh", 3, {2});
  std::mt19937_64 rng(15);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto f = testing_support::random_positive_poly(rng, amb, 5, 3);
    const auto fv = max_divisor_monomial(f);
    if (!fv) continue;
    Vec h(3);
    for (auto& v : h) v = testing_support::uniform(rng, 0, 5);
    ASSERT_EQ(trop_eval(PositiveFraction::of_polynomial(f), h), dot(*fv, h));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}
