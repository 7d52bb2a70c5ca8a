#include "hamdet/sparse_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace hamdet {

SparseBinaryVector::SparseBinaryVector(std::vector<std::uint32_t> indices,
                                       std::uint32_t dim)
    : indices_(std::move(indices)), dim_(dim) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= dim_) {
      throw std::invalid_argument("feature index out of range");
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw std::invalid_argument(
          "feature indices must be strictly increasing");
    }
  }
}

SparseBinaryVector SparseBinaryVector::from_dense(
    const std::vector<bool>& bits) {
  std::vector<std::uint32_t> idx;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) idx.push_back(static_cast<std::uint32_t>(j));
  }
  return SparseBinaryVector(std::move(idx),
                            static_cast<std::uint32_t>(bits.size()));
}

bool SparseBinaryVector::contains(std::uint32_t feature) const {
  return std::binary_search(indices_.begin(), indices_.end(), feature);
}

std::vector<bool> SparseBinaryVector::to_dense() const {
  std::vector<bool> bits(dim_, false);
  for (auto j : indices_) bits[j] = true;
  return bits;
}

std::uint32_t symmetric_difference_size(std::span<const std::uint32_t> a,
                                        std::span<const std::uint32_t> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint32_t diff = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++diff;
      ++i;
    } else if (a[i] > b[j]) {
      ++diff;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return diff + static_cast<std::uint32_t>((a.size() - i) + (b.size() - j));
}

std::uint32_t intersection_size(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint32_t common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

namespace {

void require_same_dim(const SparseBinaryVector& a,
                      const SparseBinaryVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vectors have different dimensions");
  }
}

}  // namespace

std::uint32_t hamming_distance(const SparseBinaryVector& a,
                               const SparseBinaryVector& b) {
  require_same_dim(a, b);
  return symmetric_difference_size(a.indices(), b.indices());
}

SparseBinaryVector set_union(const SparseBinaryVector& a,
                             const SparseBinaryVector& b) {
  require_same_dim(a, b);
  std::vector<std::uint32_t> merged;
  merged.reserve(a.indices().size() + b.indices().size());
  std::set_union(a.indices().begin(), a.indices().end(), b.indices().begin(),
                 b.indices().end(), std::back_inserter(merged));
  return SparseBinaryVector(std::move(merged), a.dim());
}

double lp_distance(const SparseBinaryVector& a, const SparseBinaryVector& b,
                   int p) {
  require_same_dim(a, b);
  if (p < 1) {
    throw std::invalid_argument("lp_distance requires p >= 1");
  }
  // |x - y|^p == |x - y| for binary coordinates, so the inner sum is the
  // number of differing positions.
  const std::uint32_t differing =
      symmetric_difference_size(a.indices(), b.indices());
  if (p == 1) return static_cast<double>(differing);
  return std::pow(static_cast<double>(differing), 1.0 / p);
}

DenseBitset::DenseBitset(const SparseBinaryVector& v)
    : DenseBitset(v.indices(), v.dim()) {}

DenseBitset::DenseBitset(std::span<const std::uint32_t> indices,
                         std::uint32_t dim)
    : words_((dim + 63) / 64, 0), dim_(dim) {
  for (auto j : indices) {
    words_[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
}

std::uint32_t hamming_distance(const DenseBitset& a, const DenseBitset& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vectors have different dimensions");
  }
  std::uint32_t diff = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t k = 0; k < wa.size(); ++k) {
    diff += static_cast<std::uint32_t>(std::popcount(wa[k] ^ wb[k]));
  }
  return diff;
}

}  // namespace hamdet
