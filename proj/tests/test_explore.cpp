#include <gtest/gtest.h>

#include <algorithm>

#include "gca/explore.hpp"

using namespace gca;

namespace {

const IntMatrix kB{{0, -1}, {1, 0}};

IntMatrix principal(const IntMatrix& b) {
  const int n = b.rows();
  IntMatrix bt(2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bt(i, j) = b(i, j);
      bt(n + i, j) = i == j;
    }
  return bt;
}

}  // namespace

TEST(Explore, OrdinaryA2PrincipalIsAPentagon) {
  const MutationData md(2, 4, {1, 1});
  ExploreOptions opts;
  opts.unlabeled = true;
  const auto ex = explore(md, principal(kB), opts);
  EXPECT_TRUE(ex.closed);
  EXPECT_EQ(ex.seeds.size(), 5u);
  EXPECT_EQ(ex.cluster_count(), 5u);
  EXPECT_EQ(ex.variables.size(), 5u);
  EXPECT_EQ(ex.edges.size(), 5u);

  const auto labeled = explore(md, principal(kB));
  EXPECT_TRUE(labeled.closed);
  EXPECT_EQ(labeled.seeds.size(), 10u);
  EXPECT_EQ(labeled.cluster_count(), 5u);
}

TEST(Explore, CoefficientFreeA2VariablesAreTheClassicalFive) {
  const MutationData md(2, 2, {1, 1});
  const auto ex = explore(md, kB);
  ASSERT_TRUE(ex.closed);
  const auto x = make_ambient("x", 2, {1, 1});
  auto X = [&](int i, int e = 1) { return LaurentPoly::variable(x, i, e); };
  const LaurentPoly one = LaurentPoly::one(x);
  const std::vector<LaurentPoly> expected{
      X(0), X(1), (one + X(1)) * X(0, -1), (one + X(0)) * X(1, -1), (one + X(0) + X(1)) * X(0, -1) * X(1, -1)};
  ASSERT_EQ(ex.variables.size(), expected.size());
  for (const auto& e : expected) EXPECT_GE(ex.variable_index(e), 0) << to_string(e);
}

TEST(Explore, RankOneWithDoubleExchange) {
  const auto ex = explore(MutationData(1, 1, {2}), IntMatrix{{0}});
  EXPECT_TRUE(ex.closed);
  EXPECT_EQ(ex.seeds.size(), 2u);
  EXPECT_EQ(ex.cluster_count(), 2u);
  EXPECT_EQ(to_string(ex.variables[1]), "z[1,1]*x1^-1 + 2*x1^-1");
}

TEST(Explore, RankTwoGeneralizedInstanceHasSixClusters) {
  const MutationData md(2, 2, {1, 2});
  for (bool unlabeled : {false, true}) {
    ExploreOptions opts;
    opts.unlabeled = unlabeled;
    const auto ex = explore(md, kB, opts);
    EXPECT_TRUE(ex.closed);
    EXPECT_EQ(ex.cluster_count(), 6u);
    EXPECT_EQ(ex.variables.size(), 6u);
  }
}

TEST(Explore, BudgetsTruncate) {
  ExploreOptions one;
  one.max_seeds = 1;
  const auto ex = explore(MutationData(2, 2, {1, 1}), kB, one);
  EXPECT_FALSE(ex.closed);
  EXPECT_EQ(ex.seeds.size(), 1u);
  EXPECT_THROW(ex.require_closed(), ExplorationBudgetExceeded);

  ExploreOptions shallow;
  shallow.max_depth = 1;
  EXPECT_FALSE(explore(MutationData(2, 2, {1, 1}), kB, shallow).closed);

  ExploreOptions small;
  small.max_seeds = 20;
  const auto affine = explore(MutationData(2, 2, {2, 2}), kB, small);
  EXPECT_FALSE(affine.closed);
  EXPECT_EQ(affine.seeds.size(), 20u);
}

TEST(Explore, WordsReachTheirSeeds) {
  const MutationData md(2, 4, {1, 2});
  const auto ex = explore(md, principal(kB));
  ASSERT_TRUE(ex.closed);
  for (const auto& s : ex.seeds) {
    const Seed direct = mutate_seed_along(Seed::initial(md, principal(kB)), s.word);
    EXPECT_EQ(direct, s.seed) << word_str(s.word);
  }
}
