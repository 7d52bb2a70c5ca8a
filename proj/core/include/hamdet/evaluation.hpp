#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hamdet/classifiers.hpp"
#include "hamdet/dataset.hpp"
#include "hamdet/feature_ranking.hpp"
#include "hamdet/metrics.hpp"
#include "hamdet/pdme.hpp"

namespace hamdet {

enum class Algo { fnn, ann, wann, kmnn, pdme };

std::string algo_name(Algo algo);
Algo algo_from_name(const std::string& name);

/// Best-case bounds for any classifier that votes inside the ANN
/// neighbor set: a test sample can only be classified correctly when its
/// true label occurs among its nearest neighbors' labels. Samples whose
/// label is attainable are scored correct, the rest take the forced
/// error, and accuracy / fpr_paper / auc_paper of that best-case
/// confusion give the bounds.
struct MaaBounds {
  double max_accuracy = 0.0;
  double min_fpr = 0.0;
  double max_auc = 0.0;
};

MaaBounds maa_bounds(const LabeledDataset& test, const LabeledDataset& train);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;  // standard fp / (fp + tn)
  double tpr = 0.0;
};

/// Threshold sweep over malware vote shares: a sample is predicted
/// malware when its share >= threshold. Thresholds run from 0 (everything
/// predicted malware) through every distinct observed share to a sentinel
/// above 1 (nothing predicted malware), so the curve always contains
/// (1,1) and (0,0).
struct RocCurve {
  std::vector<RocPoint> points;  // ascending threshold
};

RocCurve roc_from_scores(const std::vector<double>& scores,
                         const std::vector<int>& actual);

struct RocOptions {
  KmnnConfig kmnn;
  TieRule tie = TieRule::malware;
  double entropy_log_base = 0.0;
};

/// ROC over a test fold. FNN is rejected: its vote share is the
/// degenerate set {0,1} and carries no threshold information.
RocCurve roc_curve(const LabeledDataset& test, const LabeledDataset& train,
                   Algo algo, const RocOptions& opts = {});

/// Trapezoidal area under a curve's (fpr, tpr) staircase.
double roc_auc(const RocCurve& curve);

struct ExperimentSpec {
  std::vector<Algo> algorithms = {Algo::ann};
  std::vector<int> alpha_grid = {100};
  int repeats = 10;
  std::uint64_t master_seed = 42;
  /// When non-empty, must hold `repeats` distinct seeds; otherwise the
  /// per-repeat seeds are drawn from master_seed.
  std::vector<std::uint64_t> seeds;
  double train_ratio = 0.6;
  double valid_ratio = 0.2;
  double trim_fraction = 0.10;  // KMNN neighbor trim
  TieRule tie = TieRule::malware;  // vote ties for every method
  ForestConfig forest;
  double entropy_log_base = 0.0;
  /// Default ranks features on each repeat's training fold; the global
  /// mode ranks once on the full dataset (reproduction aid, leaks data).
  bool rank_per_fold = true;
  bool include_roc = false;
  std::uint32_t dense_cap = HammingIndex::kDefaultDenseCap;
};

/// One algorithm x feature-fraction x repeat measurement.
struct CellResult {
  MetricSet valid;
  MetricSet test;
  double auc_roc_test = std::numeric_limits<double>::quiet_NaN();
  RocCurve roc_test;  // only populated when include_roc
};

struct AlgoAlphaResult {
  Algo algo = Algo::ann;
  int alpha = 100;
  std::vector<CellResult> repeats;
  MetricSet mean_valid;
  MetricSet mean_test;
  double mean_auc_roc_test = std::numeric_limits<double>::quiet_NaN();
};

struct AlphaMaa {
  int alpha = 100;
  std::vector<MaaBounds> repeats;
  MaaBounds mean;
};

struct EvaluationReport {
  ExperimentSpec spec;                 // with resolved seeds filled in
  std::size_t n_samples = 0;
  std::uint32_t dim = 0;
  std::array<std::size_t, 3> fold_sizes = {0, 0, 0};  // train, valid, test
  std::vector<AlgoAlphaResult> cells;  // ordered by (alpha, algorithm)
  std::vector<AlphaMaa> maa;           // ordered by alpha
};

/// The shuffled train/valid/test split one repeat works with:
/// floor(train_ratio * n) training positions, floor(valid_ratio * n)
/// validation positions, remainder test.
struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> valid;
  std::vector<std::size_t> test;
};

FoldSplit protocol_fold_split(std::size_t n, double train_ratio,
                              double valid_ratio, std::uint64_t repeat_seed);

/// Repeated shuffled-holdout evaluation: per repeat the data is split
/// train/valid/test, features are ranked on the training fold, every
/// fold is projected per alpha, models are fit on the training fold
/// only, and both held-out folds are scored. Deterministic for a fixed
/// master seed. Repeats run concurrently; results are ordered by repeat
/// index.
EvaluationReport run_protocol(const LabeledDataset& data,
                              const ExperimentSpec& spec);

}  // namespace hamdet
