#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamdet/sparse_vector.hpp"

namespace hamdet {

/// Labeled collection of samples sharing one feature space.
/// Label 0 = benign, 1 = malware. Immutable after construction.
class LabeledDataset {
 public:
  LabeledDataset() = default;

  /// Throws std::invalid_argument if the collection is empty, sizes
  /// disagree, any label is outside {0,1}, or any sample's dimension
  /// differs from `dim`. `feature_names`, when non-empty, must have
  /// exactly `dim` entries.
  LabeledDataset(std::vector<SparseBinaryVector> samples,
                 std::vector<int> labels, std::uint32_t dim,
                 std::vector<std::string> feature_names = {});

  std::size_t size() const { return samples_.size(); }
  std::uint32_t dim() const { return dim_; }

  const std::vector<SparseBinaryVector>& samples() const { return samples_; }
  const std::vector<int>& labels() const { return labels_; }
  const SparseBinaryVector& sample(std::size_t i) const { return samples_[i]; }
  int label(std::size_t i) const { return labels_[i]; }

  bool has_feature_names() const { return !feature_names_.empty(); }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }

  /// New dataset restricted to the given sample positions, in order.
  LabeledDataset subset(const std::vector<std::size_t>& positions) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) =
      default;

 private:
  std::vector<SparseBinaryVector> samples_;
  std::vector<int> labels_;
  std::vector<std::string> feature_names_;
  std::uint32_t dim_ = 0;
};

}  // namespace hamdet
