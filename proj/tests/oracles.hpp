#pragma once

// Brute-force reference implementations the tests check the library
// against. Everything here works on dense vectors and naive loops and
// stays independent of the library's sparse kernels and scan order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hamdet/dataset.hpp"
#include "hamdet/sparse_vector.hpp"

namespace hamdet::oracle {

/// Bit-by-bit comparison of the dense expansions.
inline std::uint32_t dense_hamming(const SparseBinaryVector& a,
                                   const SparseBinaryVector& b) {
  const auto da = a.to_dense();
  const auto db = b.to_dense();
  std::uint32_t diff = 0;
  for (std::size_t j = 0; j < da.size(); ++j) {
    if (da[j] != db[j]) ++diff;
  }
  return diff;
}

/// Dense coordinate loop for (sum |x-y|^p)^(1/p).
inline double dense_lp(const SparseBinaryVector& a, const SparseBinaryVector& b,
                       int p) {
  const auto da = a.to_dense();
  const auto db = b.to_dense();
  double sum = 0.0;
  for (std::size_t j = 0; j < da.size(); ++j) {
    const double d = std::abs(static_cast<double>(da[j]) -
                              static_cast<double>(db[j]));
    sum += std::pow(d, p);
  }
  return std::pow(sum, 1.0 / p);
}

/// All argmin positions of a distance column, plus the minimum.
template <class Dist>
inline std::pair<std::vector<std::size_t>, double> scan_argmin(
    const SparseBinaryVector& query, const LabeledDataset& train, Dist dist) {
  std::vector<double> d(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    d[i] = static_cast<double>(dist(query, train.sample(i)));
  }
  const double min = *std::min_element(d.begin(), d.end());
  std::vector<std::size_t> argmin;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == min) argmin.push_back(i);
  }
  return {argmin, min};
}

inline int vote(const std::vector<int>& labels, bool ties_to_malware = true) {
  int ones = 0;
  for (int y : labels) ones += y;
  const int zeros = static_cast<int>(labels.size()) - ones;
  if (ones == zeros) return ties_to_malware ? 1 : 0;
  return ones > zeros ? 1 : 0;
}

inline int fnn(const SparseBinaryVector& query, const LabeledDataset& train) {
  std::size_t best = 0;
  std::uint32_t best_d = dense_hamming(query, train.sample(0));
  for (std::size_t i = 1; i < train.size(); ++i) {
    const std::uint32_t d = dense_hamming(query, train.sample(i));
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return train.label(best);
}

inline int ann(const SparseBinaryVector& query, const LabeledDataset& train) {
  const auto [argmin, min] = scan_argmin(query, train, dense_hamming);
  std::vector<int> labels;
  for (auto i : argmin) labels.push_back(train.label(i));
  return vote(labels);
}

/// Column sums of the dense sample matrix.
inline std::vector<std::uint32_t> feature_counts(const LabeledDataset& train) {
  std::vector<std::uint32_t> counts(train.dim(), 0);
  for (const auto& s : train.samples()) {
    const auto bits = s.to_dense();
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j]) ++counts[j];
    }
  }
  return counts;
}

inline int wann(const SparseBinaryVector& query, const LabeledDataset& train) {
  const auto counts = feature_counts(train);
  auto weight_of = [&](const SparseBinaryVector& s) {
    const auto bits = s.to_dense();
    long long w = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j]) w += counts[j];
    }
    return w;
  };
  const long long wq = weight_of(query);
  std::vector<long long> gap(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    gap[i] = std::llabs(weight_of(train.sample(i)) - wq);
  }
  const long long min = *std::min_element(gap.begin(), gap.end());
  std::vector<int> labels;
  for (std::size_t i = 0; i < gap.size(); ++i) {
    if (gap[i] == min) labels.push_back(train.label(i));
  }
  return vote(labels);
}

struct MedoidPick {
  std::size_t head_a = 0;
  std::size_t head_b = 0;
  std::uint64_t cost = 0;
};

/// Global minimum over every head pair, members assigned to the nearer
/// head.
inline MedoidPick best_medoid_pair(
    const std::vector<SparseBinaryVector>& members) {
  MedoidPick best;
  best.cost = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      std::uint64_t cost = 0;
      for (const auto& m : members) {
        cost += std::min(dense_hamming(m, members[a]),
                         dense_hamming(m, members[b]));
      }
      if (cost < best.cost) {
        best = {a, b, cost};
      }
    }
  }
  return best;
}

/// Steps of the trimmed-vote method, written out directly: ANN set, best
/// medoid pair, per-member sum of distances to both heads, ascending
/// (score, training index) order, ceil-trim with a floor of one
/// survivor, majority vote.
inline int kmnn(const SparseBinaryVector& query, const LabeledDataset& train,
                double trim_fraction) {
  const auto [argmin, min] = scan_argmin(query, train, dense_hamming);
  std::vector<int> labels;
  for (auto i : argmin) labels.push_back(train.label(i));
  if (argmin.size() < 2) return vote(labels);

  std::vector<SparseBinaryVector> members;
  for (auto i : argmin) members.push_back(train.sample(i));
  const MedoidPick heads = best_medoid_pair(members);

  std::vector<std::uint32_t> score(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    score[i] = dense_hamming(members[i], members[heads.head_a]) +
               dense_hamming(members[i], members[heads.head_b]);
  }
  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (score[l] != score[r]) return score[l] < score[r];
    return argmin[l] < argmin[r];
  });

  std::size_t drop = static_cast<std::size_t>(
      std::ceil(trim_fraction * static_cast<double>(members.size()) - 1e-9));
  drop = std::min(drop, members.size() - 1);
  std::vector<int> survivors;
  for (std::size_t k = 0; k + drop < members.size(); ++k) {
    survivors.push_back(train.label(argmin[order[k]]));
  }
  return vote(survivors);
}

/// Dense-loop entropy from a probability table.
inline double dense_entropy(const SparseBinaryVector& s,
                            const std::vector<double>& probs) {
  const auto bits = s.to_dense();
  double total = 0.0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] && probs[j] > 0.0 && probs[j] < 1.0) {
      total += -probs[j] * std::log(probs[j]);
    }
  }
  return total;
}

inline double pdme_distance(const SparseBinaryVector& a,
                            const SparseBinaryVector& b,
                            const std::vector<double>& probs) {
  const auto da = a.to_dense();
  const auto db = b.to_dense();
  std::vector<bool> du(da.size());
  for (std::size_t j = 0; j < da.size(); ++j) du[j] = da[j] || db[j];
  const auto u = SparseBinaryVector::from_dense(du);
  const double ea = dense_entropy(a, probs);
  const double eb = dense_entropy(b, probs);
  const double eu = dense_entropy(u, probs);
  const double denom = std::max(ea, std::max(eb, eu));
  if (denom == 0.0) return 0.0;
  return 1.0 - (ea + eb - eu) / denom;
}

inline int pdme_classify(const SparseBinaryVector& query,
                         const LabeledDataset& train,
                         const std::vector<double>& probs) {
  const auto [argmin, min] = scan_argmin(
      query, train,
      [&probs](const SparseBinaryVector& a, const SparseBinaryVector& b) {
        return pdme_distance(a, b, probs);
      });
  std::vector<int> labels;
  for (auto i : argmin) labels.push_back(train.label(i));
  return vote(labels);
}

/// Variance (SSE) reduction of the single split on `feature`, computed
/// from dense columns; zero when the split leaves a side empty.
inline double stump_reduction(const LabeledDataset& data,
                              std::uint32_t feature) {
  double n1 = 0.0;
  double s1 = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double y = data.label(i);
    s += y;
    if (data.sample(i).to_dense()[feature]) {
      n1 += 1.0;
      s1 += y;
    }
  }
  const double n = static_cast<double>(data.size());
  const double n0 = n - n1;
  const double s0 = s - s1;
  if (n1 == 0.0 || n0 == 0.0) return 0.0;
  return s1 * s1 / n1 + s0 * s0 / n0 - s * s / n;
}

}  // namespace hamdet::oracle
