#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hamdet {

/// Binary-classification tallies; the positive class is 1 (malware).
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) =
      default;
};

ConfusionCounts confusion(std::span<const int> predicted,
                          std::span<const int> actual);

/// Derived metrics. Two false-positive-rate variants are reported:
/// fpr_paper = fp / (tp + tn) and the standard fpr = fp / (fp + tn).
/// Likewise auc_paper = (precision + tn/(tn+fp)) / 2 is a closed-form
/// score, not the ROC integral. Any ratio with a zero denominator is
/// defined as 0 and recorded in `flags`; fpr_paper values above 1 are
/// flagged but never clipped.
struct MetricSet {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr_paper = 0.0;
  double fpr_standard = 0.0;
  double auc_paper = 0.0;
  std::vector<std::string> flags;
};

/// Throws when the confusion holds no samples.
MetricSet compute_metrics(const ConfusionCounts& c);

}  // namespace hamdet
