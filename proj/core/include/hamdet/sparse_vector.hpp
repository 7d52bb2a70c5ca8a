#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hamdet {

/// A binary feature vector in {0,1}^m stored as the sorted list of
/// positions that hold a 1. Immutable after construction.
class SparseBinaryVector {
 public:
  SparseBinaryVector() = default;

  /// `indices` must be strictly increasing and every entry < `dim`.
  /// Throws std::invalid_argument otherwise.
  SparseBinaryVector(std::vector<std::uint32_t> indices, std::uint32_t dim);

  static SparseBinaryVector from_dense(const std::vector<bool>& bits);

  std::uint32_t dim() const { return dim_; }
  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t popcount() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  bool contains(std::uint32_t feature) const;
  std::vector<bool> to_dense() const;

  friend bool operator==(const SparseBinaryVector&,
                         const SparseBinaryVector&) = default;

 private:
  std::vector<std::uint32_t> indices_;
  std::uint32_t dim_ = 0;
};

/// Number of positions where the two vectors differ, i.e. the size of the
/// symmetric difference of their index sets. Computed by a single merge
/// pass over the sorted index lists; never materializes dense vectors.
/// Throws std::invalid_argument on dimension mismatch.
std::uint32_t hamming_distance(const SparseBinaryVector& a,
                               const SparseBinaryVector& b);

/// Merge-based kernel on raw sorted index spans (no dimension check).
std::uint32_t symmetric_difference_size(std::span<const std::uint32_t> a,
                                        std::span<const std::uint32_t> b);

std::uint32_t intersection_size(std::span<const std::uint32_t> a,
                                std::span<const std::uint32_t> b);

/// Index-set union of two vectors of equal dimension.
SparseBinaryVector set_union(const SparseBinaryVector& a,
                             const SparseBinaryVector& b);

/// Minkowski distance (sum |x_i - y_i|^p)^(1/p) over the dense coordinates.
/// p = 1 is the Manhattan distance. For binary vectors this is always
/// hamming_distance(a, b)^(1/p). Requires p >= 1 and equal dimensions.
double lp_distance(const SparseBinaryVector& a, const SparseBinaryVector& b,
                   int p);

/// Packed 64-bit-word view of a vector, for the dense popcount kernel.
class DenseBitset {
 public:
  explicit DenseBitset(const SparseBinaryVector& v);
  DenseBitset(std::span<const std::uint32_t> indices, std::uint32_t dim);

  std::uint32_t dim() const { return dim_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::vector<std::uint64_t> words_;
  std::uint32_t dim_ = 0;
};

/// XOR-popcount Hamming distance; bit-exact with the sparse kernel.
std::uint32_t hamming_distance(const DenseBitset& a, const DenseBitset& b);

}  // namespace hamdet
