#include "hamdet/pdme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hamdet {

namespace {

double entropy_term(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;  // 0*log0 and 1*log1 vanish
  return -p * std::log(p);
}

double log_scale(const EntropyModel& model) {
  if (model.log_base == 0.0) return 1.0;
  if (model.log_base <= 0.0 || model.log_base == 1.0) {
    throw std::invalid_argument("log base must be positive and not 1");
  }
  return 1.0 / std::log(model.log_base);
}

void require_fits(const SparseBinaryVector& s, const EntropyModel& model) {
  if (s.dim() != model.dim()) {
    throw std::invalid_argument("vector dimension differs from entropy model");
  }
}

double term_at(const EntropyModel& model, std::uint32_t j) {
  return model.terms.empty() ? entropy_term(model.probs[j]) : model.terms[j];
}

/// Entropy of the index-set union, walked directly over both sorted
/// lists (natural log; caller applies the base scale).
double union_entropy(const SparseBinaryVector& a, const SparseBinaryVector& b,
                     const EntropyModel& model) {
  const auto& ia = a.indices();
  const auto& ib = b.indices();
  std::size_t i = 0;
  std::size_t j = 0;
  double total = 0.0;
  while (i < ia.size() || j < ib.size()) {
    std::uint32_t next;
    if (j == ib.size() || (i < ia.size() && ia[i] < ib[j])) {
      next = ia[i++];
    } else if (i == ia.size() || ib[j] < ia[i]) {
      next = ib[j++];
    } else {
      next = ia[i];
      ++i;
      ++j;
    }
    total += term_at(model, next);
  }
  return total;
}

}  // namespace

EntropyModel fit_entropy_model(const LabeledDataset& train, double log_base) {
  EntropyModel model;
  model.log_base = log_base;
  model.probs.assign(train.dim(), 0.0);
  for (const auto& s : train.samples()) {
    for (auto j : s.indices()) model.probs[j] += 1.0;
  }
  const auto n = static_cast<double>(train.size());
  for (auto& p : model.probs) p /= n;
  model.terms.reserve(model.probs.size());
  for (double p : model.probs) model.terms.push_back(entropy_term(p));
  return model;
}

double entropy(const SparseBinaryVector& s, const EntropyModel& model) {
  require_fits(s, model);
  double total = 0.0;
  for (auto j : s.indices()) total += term_at(model, j);
  return total * log_scale(model);
}

double pdme(const SparseBinaryVector& a, const SparseBinaryVector& b,
            const EntropyModel& model) {
  require_fits(a, model);
  require_fits(b, model);
  log_scale(model);  // validate the base even though ratios cancel it
  double en_a = 0.0;
  for (auto j : a.indices()) en_a += term_at(model, j);
  double en_b = 0.0;
  for (auto j : b.indices()) en_b += term_at(model, j);
  const double en_union = union_entropy(a, b, model);
  const double denom = std::max({en_a, en_b, en_union});
  if (denom == 0.0) return 0.0;  // both vectors carry zero information
  const double sim = (en_a + en_b - en_union) / denom;
  return 1.0 - sim;
}

VoteOutcome pdme_outcome(const SparseBinaryVector& query,
                         const LabeledDataset& train,
                         const EntropyModel& model, TieRule tie) {
  if (train.size() == 0) {
    throw std::invalid_argument("training set is empty");
  }
  NeighborSet nn = nearest_by(
      query, train,
      [&model](const SparseBinaryVector& a, const SparseBinaryVector& b) {
        return pdme(a, b, model);
      });
  std::vector<int> labels = nn.member_labels;
  VoteOutcome out;
  out.label = majority_vote(labels, tie);
  double ones = 0.0;
  for (int y : labels) ones += y;
  out.malware_share = ones / static_cast<double>(labels.size());
  out.voters = std::move(nn.member_indices);
  return out;
}

int pdme_classify(const SparseBinaryVector& query, const LabeledDataset& train,
                  const EntropyModel& model, TieRule tie) {
  return pdme_outcome(query, train, model, tie).label;
}

}  // namespace hamdet
