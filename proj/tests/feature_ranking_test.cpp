#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hamdet/feature_ranking.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace hamdet {
namespace {

using testing::random_dataset;
using testing::toy_query;
using testing::toy_train;

/// n samples over 10 features; feature 0 equals the label, the rest are
/// coin flips.
LabeledDataset planted_dataset(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<SparseBinaryVector> samples;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = coin(rng) ? 1 : 0;
    std::vector<bool> bits(10, false);
    bits[0] = y == 1;
    for (std::size_t j = 1; j < 10; ++j) bits[j] = coin(rng);
    samples.push_back(SparseBinaryVector::from_dense(bits));
    labels.push_back(y);
  }
  return LabeledDataset(std::move(samples), std::move(labels), 10);
}

TEST(ForestImportance, ConstantFeaturesScoreExactlyZero) {
  // Feature 2 is never set, feature 0 is always set; neither can split.
  std::vector<SparseBinaryVector> samples = {
      SparseBinaryVector({0, 1}, 4), SparseBinaryVector({0}, 4),
      SparseBinaryVector({0, 1, 3}, 4), SparseBinaryVector({0, 3}, 4)};
  const LabeledDataset train(std::move(samples), {1, 0, 1, 0}, 4);
  ForestConfig cfg;
  cfg.n_trees = 50;
  cfg.rng_seed = 5;
  const auto ranked = fit_forest_importance(train, cfg);
  EXPECT_EQ(ranked.importances[0], 0.0);
  EXPECT_EQ(ranked.importances[2], 0.0);
}

TEST(ForestImportance, UninformativeLabelsYieldAllZero) {
  std::mt19937_64 rng(109);
  auto data = random_dataset(rng, 20, 8);
  const LabeledDataset constant(
      std::vector<SparseBinaryVector>(data.samples()),
      std::vector<int>(20, 1), 8);
  const auto ranked = fit_forest_importance(constant, {});
  for (double v : ranked.importances) EXPECT_EQ(v, 0.0);
}

TEST(ForestImportance, PlantedFeatureRanksFirstAcrossSeeds) {
  std::mt19937_64 data_rng(113);
  const auto train = planted_dataset(data_rng, 200);
  int first = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ForestConfig cfg;
    cfg.n_trees = 20;  // enough trees; keeps 100 fits quick
    cfg.rng_seed = seed;
    const auto ranked = fit_forest_importance(train, cfg);
    if (ranked.order.front() == 0) ++first;
  }
  EXPECT_GE(first, 95);
}

TEST(ForestImportance, SingleStumpMatchesOracle) {
  // Two features, depth-1 tree, no resampling: the importance vector is
  // exactly the best single-split variance reduction, normalized.
  std::vector<SparseBinaryVector> samples = {
      SparseBinaryVector({0}, 2), SparseBinaryVector({0, 1}, 2),
      SparseBinaryVector({1}, 2), SparseBinaryVector({}, 2),
      SparseBinaryVector({0}, 2), SparseBinaryVector({1}, 2)};
  const LabeledDataset train(std::move(samples), {1, 1, 0, 0, 1, 0}, 2);

  ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.max_depth = 1;
  cfg.bootstrap = false;
  const auto ranked = fit_forest_importance(train, cfg);

  const double r0 = oracle::stump_reduction(train, 0);
  const double r1 = oracle::stump_reduction(train, 1);
  const std::uint32_t best = r1 > r0 ? 1 : 0;
  ASSERT_NE(r0, r1);
  EXPECT_EQ(ranked.order.front(), best);
  EXPECT_NEAR(ranked.importances[best], 1.0, 1e-12);
  EXPECT_EQ(ranked.importances[1 - best], 0.0);
}

TEST(ForestImportance, NormalizedAndConsistentWithOrder) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 10; ++trial) {
    const auto train = random_dataset(rng, 40, 12);
    ForestConfig cfg;
    cfg.n_trees = 10;
    cfg.rng_seed = rng();
    const auto ranked = fit_forest_importance(train, cfg);
    const double total = std::accumulate(ranked.importances.begin(),
                                         ranked.importances.end(), 0.0);
    if (total != 0.0) EXPECT_NEAR(total, 1.0, 1e-9);
    ASSERT_EQ(ranked.order.size(), 12u);
    for (std::size_t k = 1; k < ranked.order.size(); ++k) {
      const auto prev = ranked.order[k - 1];
      const auto curr = ranked.order[k];
      EXPECT_TRUE(ranked.importances[prev] > ranked.importances[curr] ||
                  (ranked.importances[prev] == ranked.importances[curr] &&
                   prev < curr));
    }
  }
}

TEST(ForestImportance, DeterministicForFixedSeed) {
  std::mt19937_64 rng(131);
  const auto train = random_dataset(rng, 50, 10);
  ForestConfig cfg;
  cfg.n_trees = 25;
  cfg.rng_seed = 99;
  const auto a = fit_forest_importance(train, cfg);
  const auto b = fit_forest_importance(train, cfg);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.importances, b.importances);
}

TEST(ForestImportance, RejectsTinyDatasets) {
  const LabeledDataset one({SparseBinaryVector({0}, 2)}, {1}, 2);
  EXPECT_THROW(fit_forest_importance(one, {}), std::invalid_argument);
}

TEST(SelectTopFraction, CutArithmetic) {
  RankedFeatures ranked;
  ranked.order = {3, 7, 0, 1, 2, 4, 5, 6, 8, 9};
  ranked.importances.assign(10, 0.1);
  EXPECT_EQ(select_top_fraction(ranked, 20).kept.size(), 2u);
  EXPECT_EQ(select_top_fraction(ranked, 25).kept.size(), 3u);  // half-up
  EXPECT_EQ(select_top_fraction(ranked, 1).kept.size(), 1u);
  EXPECT_EQ(select_top_fraction(ranked, 100).kept.size(), 10u);
  EXPECT_THROW(select_top_fraction(ranked, 0), std::invalid_argument);
  EXPECT_THROW(select_top_fraction(ranked, 101), std::invalid_argument);
}

TEST(SelectTopFraction, FullFractionIsIdentityProjection) {
  RankedFeatures ranked;
  ranked.order = {5, 2, 8, 0, 1, 3, 4, 6, 7, 9};
  ranked.importances.assign(10, 0.1);
  const auto proj = select_top_fraction(ranked, 100);
  std::vector<std::uint32_t> identity(10);
  std::iota(identity.begin(), identity.end(), 0u);
  EXPECT_EQ(proj.kept, identity);
  const auto x = toy_query();
  EXPECT_EQ(proj.apply(x), x);
}

TEST(SelectTopFraction, WorkedExampleProjection) {
  // Top-2 ranking holding the query's own features: the query projects
  // onto the all-kept vector {0,1}.
  RankedFeatures ranked;
  ranked.order = {3, 7, 0, 1, 2, 4, 5, 6, 8, 9};
  ranked.importances.assign(10, 0.0);
  ranked.importances[3] = 0.6;
  ranked.importances[7] = 0.4;
  const auto proj = select_top_fraction(ranked, 20);
  EXPECT_EQ(proj.kept, (std::vector<std::uint32_t>{3, 7}));
  EXPECT_EQ(proj.apply(toy_query()), SparseBinaryVector({0, 1}, 2));

  const auto train_p = proj.apply(toy_train());
  EXPECT_EQ(train_p.dim(), 2u);
  EXPECT_EQ(train_p.sample(1), SparseBinaryVector({0}, 2));  // S2 keeps f4
}

TEST(SelectTopFraction, ProjectionRoundTripKeepsKeptBits) {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 50; ++trial) {
    const auto data = random_dataset(rng, 10, 20);
    ForestConfig cfg;
    cfg.n_trees = 5;
    cfg.rng_seed = rng();
    const auto ranked = fit_forest_importance(data, cfg);
    const int alpha = 1 + static_cast<int>(rng() % 100);
    const auto proj = select_top_fraction(ranked, alpha);

    const auto& original = data.sample(rng() % data.size());
    const auto back = proj.unproject(proj.apply(original));
    for (auto j : proj.kept) {
      EXPECT_EQ(back.contains(j), original.contains(j));
    }
    EXPECT_LE(back.popcount(), original.popcount());
  }
}

}  // namespace
}  // namespace hamdet
