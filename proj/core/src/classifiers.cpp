#include "hamdet/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "hamdet/kmedoids.hpp"

namespace hamdet {

int majority_vote(std::span<const int> labels, TieRule tie) {
  if (labels.empty()) {
    throw std::invalid_argument("cannot vote over an empty label list");
  }
  std::size_t ones = 0;
  for (int y : labels) ones += static_cast<std::size_t>(y);
  const std::size_t zeros = labels.size() - ones;
  if (ones > zeros) return 1;
  if (zeros > ones) return 0;
  switch (tie) {
    case TieRule::malware:
      return 1;
    case TieRule::benign:
      return 0;
    case TieRule::lowest_index:
      return labels.front();
  }
  throw std::logic_error("unknown tie rule");
}

FeatureWeights compute_feature_weights(const LabeledDataset& train) {
  FeatureWeights w;
  w.counts.assign(train.dim(), 0);
  w.n_train = train.size();
  for (const auto& s : train.samples()) {
    for (auto j : s.indices()) ++w.counts[j];
  }
  return w;
}

std::uint64_t sample_weight(const SparseBinaryVector& s,
                            const FeatureWeights& weights) {
  if (s.dim() != weights.counts.size()) {
    throw std::invalid_argument("weights cover a different feature space");
  }
  std::uint64_t total = 0;
  for (auto j : s.indices()) total += weights.counts[j];
  return total;
}

std::size_t kmnn_trim_count(double trim_fraction, std::size_t set_size) {
  if (trim_fraction < 0.0 || trim_fraction >= 1.0) {
    throw std::invalid_argument("trim fraction must lie in [0, 1)");
  }
  const double raw = trim_fraction * static_cast<double>(set_size);
  auto drop = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  if (set_size > 0 && drop >= set_size) drop = set_size - 1;
  return drop;
}

namespace {

VoteOutcome outcome_from_voters(std::vector<std::size_t> voters,
                                const LabeledDataset& train, TieRule tie) {
  std::vector<int> labels;
  labels.reserve(voters.size());
  for (auto i : voters) labels.push_back(train.label(i));
  VoteOutcome out;
  out.label = majority_vote(labels, tie);
  const auto ones = std::accumulate(labels.begin(), labels.end(), 0.0);
  out.malware_share = ones / static_cast<double>(labels.size());
  out.voters = std::move(voters);
  return out;
}

}  // namespace

VoteOutcome fnn_from_neighbors(const NeighborSet& nn,
                               const LabeledDataset& train) {
  if (nn.member_indices.empty()) {
    throw std::invalid_argument("neighbor set is empty");
  }
  (void)train;
  VoteOutcome out;
  out.voters.assign(1, nn.member_indices.front());
  out.label = nn.member_labels.front();
  out.malware_share = static_cast<double>(out.label);
  return out;
}

VoteOutcome ann_from_neighbors(const NeighborSet& nn,
                               const LabeledDataset& train, TieRule tie) {
  return outcome_from_voters(nn.member_indices, train, tie);
}

VoteOutcome fnn_outcome(const HammingIndex& index,
                        const SparseBinaryVector& query) {
  return fnn_from_neighbors(index.nearest(query), index.train());
}

VoteOutcome ann_outcome(const HammingIndex& index,
                        const SparseBinaryVector& query, TieRule tie) {
  return ann_from_neighbors(index.nearest(query), index.train(), tie);
}

std::vector<std::uint64_t> compute_sample_weights(
    const LabeledDataset& train, const FeatureWeights& weights) {
  std::vector<std::uint64_t> out;
  out.reserve(train.size());
  for (const auto& s : train.samples()) {
    out.push_back(sample_weight(s, weights));
  }
  return out;
}

VoteOutcome wann_outcome(const LabeledDataset& train,
                         const FeatureWeights& weights,
                         std::span<const std::uint64_t> train_weights,
                         const SparseBinaryVector& query, TieRule tie) {
  if (weights.counts.size() != train.dim() ||
      weights.n_train != train.size() ||
      train_weights.size() != train.size()) {
    throw std::invalid_argument("feature weights were not fit on this set");
  }
  const std::uint64_t query_weight = sample_weight(query, weights);
  std::vector<std::size_t> selected;
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    const std::uint64_t w = train_weights[i];
    const std::uint64_t gap = w > query_weight ? w - query_weight
                                               : query_weight - w;
    if (selected.empty() || gap < best) {
      best = gap;
      selected.assign(1, i);
    } else if (gap == best) {
      selected.push_back(i);
    }
  }
  return outcome_from_voters(std::move(selected), train, tie);
}

VoteOutcome wann_outcome(const LabeledDataset& train,
                         const FeatureWeights& weights,
                         const SparseBinaryVector& query, TieRule tie) {
  return wann_outcome(train, weights, compute_sample_weights(train, weights),
                      query, tie);
}

VoteOutcome kmnn_from_neighbors(const NeighborSet& nn,
                                const LabeledDataset& train,
                                const KmnnConfig& cfg) {
  if (cfg.trim_fraction < 0.0 || cfg.trim_fraction >= 1.0) {
    throw std::invalid_argument("trim fraction must lie in [0, 1)");
  }
  if (nn.size() < 2) {
    return outcome_from_voters(nn.member_indices, train, cfg.tie_rule);
  }

  std::vector<SparseBinaryVector> members;
  members.reserve(nn.size());
  for (auto i : nn.member_indices) members.push_back(train.sample(i));

  const MedoidClustering clustering = two_medoid_cluster(members);
  const std::vector<std::uint32_t> scores =
      ch_distance_scores(members, clustering);

  // Sort members by (distance-from-heads score, training index) and trim
  // the highest-scoring tail, always keeping at least one voter.
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    if (scores[lhs] != scores[rhs]) return scores[lhs] < scores[rhs];
    return nn.member_indices[lhs] < nn.member_indices[rhs];
  });
  const std::size_t drop = kmnn_trim_count(cfg.trim_fraction, members.size());
  const std::size_t keep = members.size() - drop;

  std::vector<std::size_t> survivors;
  survivors.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    survivors.push_back(nn.member_indices[order[k]]);
  }
  std::sort(survivors.begin(), survivors.end());
  return outcome_from_voters(std::move(survivors), train, cfg.tie_rule);
}

VoteOutcome kmnn_outcome(const HammingIndex& index,
                         const SparseBinaryVector& query,
                         const KmnnConfig& cfg) {
  return kmnn_from_neighbors(index.nearest(query), index.train(), cfg);
}

int fnn_classify(const SparseBinaryVector& query,
                 const LabeledDataset& train) {
  return fnn_outcome(HammingIndex(train), query).label;
}

int ann_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                 TieRule tie) {
  return ann_outcome(HammingIndex(train), query, tie).label;
}

NeighborSet ann_neighbors(const SparseBinaryVector& query,
                          const LabeledDataset& train) {
  return HammingIndex(train).nearest(query);
}

int wann_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                  const FeatureWeights& weights, TieRule tie) {
  return wann_outcome(train, weights, query, tie).label;
}

int kmnn_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                  const KmnnConfig& cfg) {
  return kmnn_outcome(HammingIndex(train), query, cfg).label;
}

}  // namespace hamdet
