#include "hamdet/dataset.hpp"

#include <stdexcept>

namespace hamdet {

LabeledDataset::LabeledDataset(std::vector<SparseBinaryVector> samples,
                               std::vector<int> labels, std::uint32_t dim,
                               std::vector<std::string> feature_names)
    : samples_(std::move(samples)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      dim_(dim) {
  if (samples_.empty()) {
    throw std::invalid_argument("dataset must contain at least one sample");
  }
  if (samples_.size() != labels_.size()) {
    throw std::invalid_argument("sample and label counts differ");
  }
  for (const auto& s : samples_) {
    if (s.dim() != dim_) {
      throw std::invalid_argument("sample dimension differs from dataset");
    }
  }
  for (int y : labels_) {
    if (y != 0 && y != 1) {
      throw std::invalid_argument("labels must be 0 or 1");
    }
  }
  if (!feature_names_.empty() && feature_names_.size() != dim_) {
    throw std::invalid_argument("feature-name table must cover every feature");
  }
}

LabeledDataset LabeledDataset::subset(
    const std::vector<std::size_t>& positions) const {
  std::vector<SparseBinaryVector> s;
  std::vector<int> y;
  s.reserve(positions.size());
  y.reserve(positions.size());
  for (auto p : positions) {
    s.push_back(samples_.at(p));
    y.push_back(labels_.at(p));
  }
  return LabeledDataset(std::move(s), std::move(y), dim_, feature_names_);
}

}  // namespace hamdet
