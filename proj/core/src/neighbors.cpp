#include "hamdet/neighbors.hpp"

#include <stdexcept>

namespace hamdet {

namespace {

void require_query_fits(const SparseBinaryVector& query,
                        const LabeledDataset& train) {
  if (train.size() == 0) {
    throw std::invalid_argument("training set is empty");
  }
  if (query.dim() != train.dim()) {
    throw std::invalid_argument("query dimension differs from training set");
  }
}

}  // namespace

NeighborSet nearest_indices(const SparseBinaryVector& query,
                            const LabeledDataset& train, DistanceSpec metric) {
  require_query_fits(query, train);
  switch (metric.kind) {
    case DistanceKind::hamming:
      return nearest_by(query, train,
                        [](const SparseBinaryVector& a,
                           const SparseBinaryVector& b) {
                          return symmetric_difference_size(a.indices(),
                                                           b.indices());
                        });
    case DistanceKind::manhattan:
      return nearest_by(query, train,
                        [](const SparseBinaryVector& a,
                           const SparseBinaryVector& b) {
                          return lp_distance(a, b, 1);
                        });
    case DistanceKind::minkowski:
      if (metric.p < 1) {
        throw std::invalid_argument("minkowski order must be >= 1");
      }
      return nearest_by(query, train,
                        [p = metric.p](const SparseBinaryVector& a,
                                       const SparseBinaryVector& b) {
                          return lp_distance(a, b, p);
                        });
  }
  throw std::logic_error("unknown distance kind");
}

HammingIndex::HammingIndex(const LabeledDataset& train,
                           std::uint32_t dense_cap)
    : train_(&train) {
  if (train.dim() <= dense_cap) {
    packed_.reserve(train.size());
    for (const auto& s : train.samples()) {
      packed_.emplace_back(s);
    }
  }
}

NeighborSet HammingIndex::nearest(const SparseBinaryVector& query) const {
  require_query_fits(query, *train_);
  NeighborSet out;
  std::uint32_t best = 0;
  bool have_best = false;
  auto consider = [&](std::size_t i, std::uint32_t d) {
    if (!have_best || d < best) {
      best = d;
      have_best = true;
      out.member_indices.assign(1, i);
      out.member_labels.assign(1, train_->label(i));
    } else if (d == best) {
      out.member_indices.push_back(i);
      out.member_labels.push_back(train_->label(i));
    }
  };
  if (uses_dense_backend()) {
    const DenseBitset packed_query(query);
    for (std::size_t i = 0; i < packed_.size(); ++i) {
      consider(i, hamming_distance(packed_query, packed_[i]));
    }
  } else {
    for (std::size_t i = 0; i < train_->size(); ++i) {
      consider(i, symmetric_difference_size(query.indices(),
                                            train_->sample(i).indices()));
    }
  }
  out.min_distance = static_cast<double>(best);
  return out;
}

}  // namespace hamdet
