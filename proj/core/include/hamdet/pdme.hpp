#pragma once

#include <vector>

#include "hamdet/classifiers.hpp"
#include "hamdet/dataset.hpp"

namespace hamdet {

/// Per-feature occurrence probabilities estimated from a training set
/// (count / n_train). Fit on the training fold only. `terms` caches the
/// natural-log -p*log(p) value per feature; fit_entropy_model fills it,
/// and a model built by hand may leave it empty.
struct EntropyModel {
  std::vector<double> probs;
  std::vector<double> terms;
  double log_base = 0.0;  // 0 means natural log

  std::size_t dim() const { return probs.size(); }
};

EntropyModel fit_entropy_model(const LabeledDataset& train,
                               double log_base = 0.0);

/// En(s) = -sum over set bits j of p_j * log(p_j); the p in {0,1} terms
/// vanish, so the result is always finite and non-negative.
double entropy(const SparseBinaryVector& s, const EntropyModel& model);

/// Entropy-based dissimilarity: 1 - (En(a) + En(b) - En(a u b)) / max of
/// the three entropies. Two zero-information vectors get distance 0. The
/// value can exceed 1 for heavily disjoint high-entropy unions; it is
/// returned unclipped.
double pdme(const SparseBinaryVector& a, const SparseBinaryVector& b,
            const EntropyModel& model);

/// ANN-style classification under the pdme distance: collect every
/// training sample at minimal distance, then vote.
int pdme_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                  const EntropyModel& model, TieRule tie = TieRule::malware);

VoteOutcome pdme_outcome(const SparseBinaryVector& query,
                         const LabeledDataset& train,
                         const EntropyModel& model,
                         TieRule tie = TieRule::malware);

}  // namespace hamdet
