#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hamdet/dataset.hpp"
#include "hamdet/neighbors.hpp"

namespace hamdet {

/// Policy for breaking an exact 0/1 vote tie. `malware` (the default)
/// predicts 1, `benign` predicts 0, `lowest_index` takes the label of the
/// first voter in training-index order.
enum class TieRule { malware, benign, lowest_index };

/// Most frequent label among the voters; ties resolved by `tie`.
/// Throws on an empty voter list.
int majority_vote(std::span<const int> labels, TieRule tie = TieRule::malware);

/// Per-feature occurrence counts over a training set. Raw counts are
/// stored; dividing by n_train gives the frequency form, which selects
/// the same weighted neighbors.
struct FeatureWeights {
  std::vector<std::uint32_t> counts;
  std::size_t n_train = 0;
};

FeatureWeights compute_feature_weights(const LabeledDataset& train);

/// Weight of one sample: sum of the per-feature counts over its set bits.
std::uint64_t sample_weight(const SparseBinaryVector& s,
                            const FeatureWeights& weights);

struct KmnnConfig {
  double trim_fraction = 0.10;  // must satisfy 0 <= f < 1
  TieRule tie_rule = TieRule::malware;
};

/// Number of neighbors a KMNN trim removes: ceil(fraction * set size),
/// capped so at least one voter survives. A tiny slack keeps binary
/// representations of fractions like 0.10 from pushing an exact product
/// (0.10 * 10) past the next integer.
std::size_t kmnn_trim_count(double trim_fraction, std::size_t set_size);

/// Prediction plus the evidence behind it: the final voter set (ascending
/// training indices) and the fraction of those voters labeled malware.
/// The share is the score swept by ROC curves.
struct VoteOutcome {
  int label = 0;
  double malware_share = 0.0;
  std::vector<std::size_t> voters;
};

VoteOutcome fnn_outcome(const HammingIndex& index,
                        const SparseBinaryVector& query);
VoteOutcome ann_outcome(const HammingIndex& index,
                        const SparseBinaryVector& query,
                        TieRule tie = TieRule::malware);
VoteOutcome wann_outcome(const LabeledDataset& train,
                         const FeatureWeights& weights,
                         const SparseBinaryVector& query,
                         TieRule tie = TieRule::malware);

/// Batch form: training sample weights are fit-once state, so callers
/// scoring many queries precompute them with this and pass them back in.
std::vector<std::uint64_t> compute_sample_weights(const LabeledDataset& train,
                                                  const FeatureWeights& weights);
VoteOutcome wann_outcome(const LabeledDataset& train,
                         const FeatureWeights& weights,
                         std::span<const std::uint64_t> train_weights,
                         const SparseBinaryVector& query,
                         TieRule tie = TieRule::malware);
VoteOutcome kmnn_outcome(const HammingIndex& index,
                         const SparseBinaryVector& query,
                         const KmnnConfig& cfg = {});

/// FNN/ANN/KMNN share the same neighbor scan; these variants reuse one
/// precomputed NeighborSet for all three.
VoteOutcome fnn_from_neighbors(const NeighborSet& nn,
                               const LabeledDataset& train);
VoteOutcome ann_from_neighbors(const NeighborSet& nn,
                               const LabeledDataset& train,
                               TieRule tie = TieRule::malware);
VoteOutcome kmnn_from_neighbors(const NeighborSet& nn,
                                const LabeledDataset& train,
                                const KmnnConfig& cfg = {});

/// Label of the lowest-index training sample at minimal Hamming distance.
int fnn_classify(const SparseBinaryVector& query, const LabeledDataset& train);

/// Majority vote over every training sample at minimal Hamming distance.
int ann_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                 TieRule tie = TieRule::malware);

/// The neighbor set ANN votes over.
NeighborSet ann_neighbors(const SparseBinaryVector& query,
                          const LabeledDataset& train);

/// Majority vote over the training samples whose feature-count weight is
/// closest to the query's weight.
int wann_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                  const FeatureWeights& weights,
                  TieRule tie = TieRule::malware);

/// ANN neighbor set, two-medoid clustered; the trim fraction of members
/// farthest from the cluster heads is dropped before voting.
int kmnn_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                  const KmnnConfig& cfg = {});

}  // namespace hamdet
