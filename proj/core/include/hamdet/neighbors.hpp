#pragma once

#include <cstdint>
#include <vector>

#include "hamdet/dataset.hpp"
#include "hamdet/sparse_vector.hpp"

namespace hamdet {

enum class DistanceKind { hamming, manhattan, minkowski };

struct DistanceSpec {
  DistanceKind kind = DistanceKind::hamming;
  int p = 2;  // minkowski order; ignored otherwise
};

/// All training samples at minimal distance to a query, ascending by
/// training index, with their labels and the shared minimal distance.
struct NeighborSet {
  std::vector<std::size_t> member_indices;
  std::vector<int> member_labels;
  double min_distance = 0.0;

  std::size_t size() const { return member_indices.size(); }
};

/// Full scan over the training set; collects every index achieving the
/// minimum distance under the requested metric. Throws on dimension
/// mismatch or an empty training set.
NeighborSet nearest_indices(const SparseBinaryVector& query,
                            const LabeledDataset& train,
                            DistanceSpec metric = {});

/// Scan with an arbitrary distance functor d(query, train.sample(i)).
/// Ties are detected by exact equality of the returned values.
template <class DistFn>
NeighborSet nearest_by(const SparseBinaryVector& query,
                       const LabeledDataset& train, DistFn&& dist) {
  NeighborSet out;
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double d = static_cast<double>(dist(query, train.sample(i)));
    if (out.member_indices.empty() || d < out.min_distance) {
      out.min_distance = d;
      out.member_indices.assign(1, i);
      out.member_labels.assign(1, train.label(i));
    } else if (d == out.min_distance) {
      out.member_indices.push_back(i);
      out.member_labels.push_back(train.label(i));
    }
  }
  return out;
}

/// Hamming nearest-neighbor scanner over a fixed training set.
///
/// Sorted-index sparse storage is canonical; when the feature count is at
/// most `dense_cap` bits the training set is additionally packed into
/// 64-bit words and queries run through the XOR-popcount kernel instead.
/// Both backends return identical neighbor sets.
class HammingIndex {
 public:
  static constexpr std::uint32_t kDefaultDenseCap = 1024;

  explicit HammingIndex(const LabeledDataset& train,
                        std::uint32_t dense_cap = kDefaultDenseCap);

  bool uses_dense_backend() const { return !packed_.empty(); }
  const LabeledDataset& train() const { return *train_; }

  NeighborSet nearest(const SparseBinaryVector& query) const;

 private:
  const LabeledDataset* train_ = nullptr;
  std::vector<DenseBitset> packed_;  // empty when the sparse kernel is used
};

}  // namespace hamdet
