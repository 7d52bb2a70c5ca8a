#pragma once

#include <cstdint>
#include <vector>

#include "hamdet/dataset.hpp"

namespace hamdet {

struct ForestConfig {
  int n_trees = 100;
  int max_depth = 8;
  int min_samples_split = 2;
  double bootstrap_fraction = 1.0;  // drawn with replacement
  bool bootstrap = true;            // false: every tree sees the raw set
  std::uint64_t rng_seed = 0;
};

/// Features ordered by descending importance. Importances are variance
/// reductions accumulated over all tree splits, averaged across trees and
/// normalized to sum 1; they are all zero when no split was informative.
/// Equal importances rank by ascending feature index.
struct RankedFeatures {
  std::vector<std::uint32_t> order;
  std::vector<double> importances;
};

/// Regression-forest importance over binary features. Trees regress the
/// 0/1 labels; each node splits one feature into its unset/set halves and
/// the split maximizing the variance (SSE) reduction wins, ties toward
/// the lowest feature index. Deterministic for a fixed rng_seed.
RankedFeatures fit_forest_importance(const LabeledDataset& train,
                                     const ForestConfig& cfg = {});

/// A kept-feature subset with its dense re-mapping. kept[i] is the
/// original index of projected feature i; kept is ascending.
struct FeatureProjection {
  std::vector<std::uint32_t> kept;
  std::uint32_t dim_original = 0;

  std::uint32_t dim() const { return static_cast<std::uint32_t>(kept.size()); }

  SparseBinaryVector apply(const SparseBinaryVector& v) const;
  LabeledDataset apply(const LabeledDataset& data) const;

  /// Maps a projected vector back into the original feature space; only
  /// the kept bits of the original can be reproduced.
  SparseBinaryVector unproject(const SparseBinaryVector& v) const;
};

/// Keeps the top round(m * alpha/100) features of the ranking (at least
/// one). alpha_percent must lie in [1, 100]; the cut uses half-up integer
/// rounding.
FeatureProjection select_top_fraction(const RankedFeatures& ranked,
                                      int alpha_percent);

}  // namespace hamdet
