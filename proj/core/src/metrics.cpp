#include "hamdet/metrics.hpp"

#include <stdexcept>

namespace hamdet {

ConfusionCounts confusion(std::span<const int> predicted,
                          std::span<const int> actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("prediction and label lists differ in length");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int a = actual[i];
    if ((p != 0 && p != 1) || (a != 0 && a != 1)) {
      throw std::invalid_argument("labels must be 0 or 1");
    }
    if (a == 1) {
      p == 1 ? ++c.tp : ++c.fn;
    } else {
      p == 1 ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

namespace {

double guarded_ratio(double num, double denom, const char* name,
                     std::vector<std::string>& flags) {
  if (denom == 0.0) {
    flags.push_back(std::string(name) + ": zero denominator, reported as 0");
    return 0.0;
  }
  return num / denom;
}

}  // namespace

MetricSet compute_metrics(const ConfusionCounts& c) {
  if (c.total() == 0) {
    throw std::invalid_argument("confusion counts hold no samples");
  }
  const auto tp = static_cast<double>(c.tp);
  const auto tn = static_cast<double>(c.tn);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);

  MetricSet m;
  m.accuracy = (tp + tn) / (tp + tn + fp + fn);
  m.precision = guarded_ratio(tp, tp + fp, "precision", m.flags);
  m.recall = guarded_ratio(tp, tp + fn, "recall", m.flags);
  m.f1 = guarded_ratio(2.0 * m.precision * m.recall, m.precision + m.recall,
                       "f1", m.flags);
  m.fpr_paper = guarded_ratio(fp, tp + tn, "fpr_paper", m.flags);
  m.fpr_standard = guarded_ratio(fp, fp + tn, "fpr_standard", m.flags);
  const double benign_rate = guarded_ratio(tn, tn + fp, "auc_paper", m.flags);
  m.auc_paper = 0.5 * (m.precision + benign_rate);
  if (m.fpr_paper > 1.0) {
    m.flags.push_back("fpr_paper: exceeds 1 (fp > tp + tn)");
  }
  return m;
}

}  // namespace hamdet
