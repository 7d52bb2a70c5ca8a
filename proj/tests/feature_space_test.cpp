#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hamdet/neighbors.hpp"
#include "hamdet/sparse_vector.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace hamdet {
namespace {

using testing::random_dataset;
using testing::random_vector;
using testing::toy_query;
using testing::toy_train;

TEST(SparseBinaryVector, RejectsBadIndexLists) {
  EXPECT_THROW(SparseBinaryVector({3, 3}, 10), std::invalid_argument);
  EXPECT_THROW(SparseBinaryVector({5, 2}, 10), std::invalid_argument);
  EXPECT_THROW(SparseBinaryVector({10}, 10), std::invalid_argument);
  EXPECT_NO_THROW(SparseBinaryVector({0, 9}, 10));
  EXPECT_NO_THROW(SparseBinaryVector({}, 10));
}

TEST(SparseBinaryVector, DenseRoundTrip) {
  const SparseBinaryVector v({1, 4, 7}, 9);
  EXPECT_EQ(SparseBinaryVector::from_dense(v.to_dense()), v);
  EXPECT_EQ(v.popcount(), 3u);
  EXPECT_TRUE(v.contains(4));
  EXPECT_FALSE(v.contains(5));
}

TEST(HammingDistance, WorkedExampleColumn) {
  const auto train = toy_train();
  const auto x = toy_query();
  const std::vector<std::uint32_t> expected = {3, 2, 4, 2, 4, 4, 2, 2, 4, 3};
  for (std::size_t i = 0; i < train.size(); ++i) {
    EXPECT_EQ(hamming_distance(x, train.sample(i)), expected[i]) << "S" << i + 1;
  }
}

TEST(HammingDistance, IdenticalVectorsAreAtZero) {
  const auto x = toy_query();
  EXPECT_EQ(hamming_distance(x, x), 0u);
}

TEST(HammingDistance, DimensionMismatchRejected) {
  const SparseBinaryVector a({1}, 8);
  const SparseBinaryVector b({1}, 9);
  EXPECT_THROW(hamming_distance(a, b), std::invalid_argument);
}

TEST(HammingDistance, MatchesDenseOracleOnRandomPairs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_vector(rng, 64);
    const auto b = random_vector(rng, 64);
    EXPECT_EQ(hamming_distance(a, b), oracle::dense_hamming(a, b));
  }
}

TEST(HammingDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_vector(rng, 64);
    const auto b = random_vector(rng, 64);
    const auto c = random_vector(rng, 64);
    const auto dab = hamming_distance(a, b);
    const auto dba = hamming_distance(b, a);
    const auto dac = hamming_distance(a, c);
    const auto dcb = hamming_distance(c, b);
    EXPECT_EQ(dab, dba);
    EXPECT_EQ(dab == 0, a == b);
    EXPECT_LE(dab, dac + dcb);
  }
}

TEST(HammingDistance, BoundedByPopcountSumWithDisjointEquality) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_vector(rng, 48);
    const auto b = random_vector(rng, 48);
    const auto d = hamming_distance(a, b);
    const auto bound = a.popcount() + b.popcount();
    EXPECT_LE(d, bound);
    const bool disjoint = intersection_size(a.indices(), b.indices()) == 0;
    EXPECT_EQ(d == bound, disjoint);
  }
}

TEST(DenseBitset, BitExactWithSparseKernel) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint32_t dim = 1 + static_cast<std::uint32_t>(rng() % 300);
    const auto a = random_vector(rng, dim);
    const auto b = random_vector(rng, dim);
    EXPECT_EQ(hamming_distance(DenseBitset(a), DenseBitset(b)),
              hamming_distance(a, b));
  }
}

TEST(LpDistance, WorkedExampleEntries) {
  const auto x = toy_query();
  const auto train = toy_train();
  EXPECT_DOUBLE_EQ(lp_distance(x, train.sample(1), 1), 2.0);  // vs S2
  EXPECT_DOUBLE_EQ(lp_distance(x, x, 1), 0.0);
  EXPECT_DOUBLE_EQ(lp_distance(x, x, 3), 0.0);
  // vs S1 at p = 2: the dense loop gives sqrt(3) for three differing bits.
  EXPECT_DOUBLE_EQ(oracle::dense_lp(x, train.sample(0), 2), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(lp_distance(x, train.sample(0), 2), std::sqrt(3.0));
}

TEST(LpDistance, AgreesWithDenseLoop) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_vector(rng, 32);
    const auto b = random_vector(rng, 32);
    for (int p : {1, 2, 3}) {
      EXPECT_NEAR(lp_distance(a, b, p), oracle::dense_lp(a, b, p), 1e-12);
    }
  }
}

TEST(LpDistance, RejectsBadOrder) {
  const auto x = toy_query();
  EXPECT_THROW(lp_distance(x, x, 0), std::invalid_argument);
  EXPECT_THROW(lp_distance(x, x, -2), std::invalid_argument);
}

TEST(NearestIndices, WorkedExampleTies) {
  const auto nn = nearest_indices(toy_query(), toy_train());
  EXPECT_EQ(nn.member_indices, (std::vector<std::size_t>{1, 3, 6, 7}));
  EXPECT_EQ(nn.member_labels, (std::vector<int>{0, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(nn.min_distance, 2.0);
}

TEST(NearestIndices, SelfQueryFindsSelf) {
  const auto train = toy_train();
  const auto nn = nearest_indices(train.sample(4), train);
  EXPECT_EQ(nn.member_indices, (std::vector<std::size_t>{4}));
  EXPECT_DOUBLE_EQ(nn.min_distance, 0.0);
}

TEST(NearestIndices, EmptyTrainingSetRejected) {
  LabeledDataset empty;
  EXPECT_THROW(nearest_indices(toy_query(), empty), std::invalid_argument);
}

TEST(NearestIndices, BadMinkowskiOrderRejected) {
  EXPECT_THROW(
      nearest_indices(toy_query(), toy_train(), {DistanceKind::minkowski, 0}),
      std::invalid_argument);
}

// The argmin set does not depend on which of the binary-equivalent
// metrics performs the scan.
TEST(NearestIndices, ArgminInvariantAcrossMetrics) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto train = random_dataset(rng, 20, 16);
    const auto query = random_vector(rng, 16);
    const auto [expected, min] =
        oracle::scan_argmin(query, train, oracle::dense_hamming);

    const auto hamming = nearest_indices(query, train, {DistanceKind::hamming});
    const auto manhattan =
        nearest_indices(query, train, {DistanceKind::manhattan});
    const auto mink2 =
        nearest_indices(query, train, {DistanceKind::minkowski, 2});
    const auto mink3 =
        nearest_indices(query, train, {DistanceKind::minkowski, 3});

    EXPECT_EQ(hamming.member_indices, expected);
    EXPECT_EQ(manhattan.member_indices, expected);
    EXPECT_EQ(mink2.member_indices, expected);
    EXPECT_EQ(mink3.member_indices, expected);
  }
}

TEST(HammingIndex, BackendsAgree) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const auto train = random_dataset(rng, 25, 40);
    const auto query = random_vector(rng, 40);
    const HammingIndex dense(train, /*dense_cap=*/4096);
    const HammingIndex sparse(train, /*dense_cap=*/0);
    ASSERT_TRUE(dense.uses_dense_backend());
    ASSERT_FALSE(sparse.uses_dense_backend());

    const auto a = dense.nearest(query);
    const auto b = sparse.nearest(query);
    EXPECT_EQ(a.member_indices, b.member_indices);
    EXPECT_EQ(a.member_labels, b.member_labels);
    EXPECT_DOUBLE_EQ(a.min_distance, b.min_distance);
    EXPECT_EQ(a.member_indices,
              nearest_indices(query, train).member_indices);
  }
}

}  // namespace
}  // namespace hamdet
