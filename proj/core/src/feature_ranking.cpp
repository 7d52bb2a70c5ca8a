#include "hamdet/feature_ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hamdet {

namespace {

constexpr double kMinReduction = 1e-12;

/// One regression tree, grown depth-first. Accumulates the SSE reduction
/// of every split into `importance`, indexed by original feature.
class TreeGrower {
 public:
  TreeGrower(const LabeledDataset& data, const ForestConfig& cfg,
             std::vector<double>& importance)
      : data_(data),
        cfg_(cfg),
        importance_(importance),
        set_count_(data.dim(), 0),
        set_label_sum_(data.dim(), 0) {}

  void grow(std::vector<std::uint32_t> sample_ids) {
    split_node(std::move(sample_ids), 0);
  }

 private:
  struct Split {
    std::uint32_t feature = 0;
    double reduction = 0.0;
    bool valid = false;
  };

  void split_node(std::vector<std::uint32_t> ids, int depth) {
    if (depth >= cfg_.max_depth ||
        ids.size() < static_cast<std::size_t>(cfg_.min_samples_split)) {
      return;
    }

    // Tally, per feature present in this node, how many node samples set
    // it and their label sum. Features absent from every node sample
    // cannot split, so only touched entries are scanned and reset.
    std::vector<std::uint32_t> touched;
    std::uint64_t label_sum = 0;
    for (auto id : ids) {
      const auto y = static_cast<std::uint32_t>(data_.label(id));
      label_sum += y;
      for (auto j : data_.sample(id).indices()) {
        if (set_count_[j] == 0) touched.push_back(j);
        ++set_count_[j];
        set_label_sum_[j] += y;
      }
    }

    const auto n = static_cast<double>(ids.size());
    const auto s = static_cast<double>(label_sum);
    const double parent_term = s * s / n;

    Split best;
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      const double n1 = set_count_[j];
      const double s1 = set_label_sum_[j];
      if (set_count_[j] == ids.size()) continue;  // no unset side
      const double n0 = n - n1;
      const double s0 = s - s1;
      const double reduction = s1 * s1 / n1 + s0 * s0 / n0 - parent_term;
      if (reduction > kMinReduction &&
          (!best.valid || reduction > best.reduction)) {
        best.feature = j;
        best.reduction = reduction;
        best.valid = true;
      }
    }

    for (auto j : touched) {
      set_count_[j] = 0;
      set_label_sum_[j] = 0;
    }
    if (!best.valid) return;

    importance_[best.feature] += best.reduction;

    std::vector<std::uint32_t> with_bit;
    std::vector<std::uint32_t> without_bit;
    for (auto id : ids) {
      (data_.sample(id).contains(best.feature) ? with_bit : without_bit)
          .push_back(id);
    }
    ids.clear();
    ids.shrink_to_fit();
    split_node(std::move(without_bit), depth + 1);
    split_node(std::move(with_bit), depth + 1);
  }

  const LabeledDataset& data_;
  const ForestConfig& cfg_;
  std::vector<double>& importance_;
  std::vector<std::uint32_t> set_count_;
  std::vector<std::uint64_t> set_label_sum_;
};

}  // namespace

RankedFeatures fit_forest_importance(const LabeledDataset& train,
                                     const ForestConfig& cfg) {
  if (train.size() < 2) {
    throw std::invalid_argument("forest ranking needs at least two samples");
  }
  if (cfg.n_trees < 1 || cfg.max_depth < 1) {
    throw std::invalid_argument("forest needs n_trees >= 1 and max_depth >= 1");
  }
  if (cfg.bootstrap_fraction <= 0.0) {
    throw std::invalid_argument("bootstrap fraction must be positive");
  }

  const std::uint32_t m = train.dim();
  const std::size_t n = train.size();
  std::vector<double> importance(m, 0.0);
  std::mt19937_64 seeder(cfg.rng_seed);

  for (int t = 0; t < cfg.n_trees; ++t) {
    std::mt19937_64 rng(seeder());
    std::vector<std::uint32_t> ids;
    if (cfg.bootstrap) {
      const auto draws = std::max<std::size_t>(
          1, static_cast<std::size_t>(
                 std::llround(cfg.bootstrap_fraction * static_cast<double>(n))));
      ids.reserve(draws);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t k = 0; k < draws; ++k) {
        ids.push_back(static_cast<std::uint32_t>(pick(rng)));
      }
    } else {
      ids.resize(n);
      std::iota(ids.begin(), ids.end(), 0u);
    }
    TreeGrower(train, cfg, importance).grow(std::move(ids));
  }

  for (auto& v : importance) v /= static_cast<double>(cfg.n_trees);
  const double total = std::accumulate(importance.begin(), importance.end(),
                                       0.0);
  if (total > 0.0) {
    for (auto& v : importance) v /= total;
  }

  RankedFeatures ranked;
  ranked.importances = std::move(importance);
  ranked.order.resize(m);
  std::iota(ranked.order.begin(), ranked.order.end(), 0u);
  std::sort(ranked.order.begin(), ranked.order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (ranked.importances[a] != ranked.importances[b]) {
                return ranked.importances[a] > ranked.importances[b];
              }
              return a < b;
            });
  return ranked;
}

SparseBinaryVector FeatureProjection::apply(const SparseBinaryVector& v) const {
  if (v.dim() != dim_original) {
    throw std::invalid_argument("vector does not live in the original space");
  }
  std::vector<std::uint32_t> out;
  // kept and v.indices() are both ascending; intersect and re-index.
  std::size_t k = 0;
  for (auto j : v.indices()) {
    while (k < kept.size() && kept[k] < j) ++k;
    if (k == kept.size()) break;
    if (kept[k] == j) out.push_back(static_cast<std::uint32_t>(k));
  }
  return SparseBinaryVector(std::move(out), dim());
}

LabeledDataset FeatureProjection::apply(const LabeledDataset& data) const {
  std::vector<SparseBinaryVector> samples;
  samples.reserve(data.size());
  for (const auto& s : data.samples()) samples.push_back(apply(s));
  std::vector<std::string> names;
  if (data.has_feature_names()) {
    names.reserve(kept.size());
    for (auto j : kept) names.push_back(data.feature_names()[j]);
  }
  return LabeledDataset(std::move(samples), data.labels(), dim(),
                        std::move(names));
}

SparseBinaryVector FeatureProjection::unproject(
    const SparseBinaryVector& v) const {
  if (v.dim() != dim()) {
    throw std::invalid_argument("vector does not live in the projected space");
  }
  std::vector<std::uint32_t> out;
  out.reserve(v.indices().size());
  for (auto i : v.indices()) out.push_back(kept[i]);
  return SparseBinaryVector(std::move(out), dim_original);
}

FeatureProjection select_top_fraction(const RankedFeatures& ranked,
                                      int alpha_percent) {
  if (alpha_percent < 1 || alpha_percent > 100) {
    throw std::invalid_argument("alpha percent must lie in [1, 100]");
  }
  const std::size_t m = ranked.order.size();
  if (m == 0) {
    throw std::invalid_argument("ranking is empty");
  }
  // Half-up rounding of m * alpha / 100, floor of one feature.
  std::size_t keep_count =
      (m * static_cast<std::size_t>(alpha_percent) + 50) / 100;
  keep_count = std::clamp<std::size_t>(keep_count, 1, m);

  FeatureProjection proj;
  proj.dim_original = static_cast<std::uint32_t>(m);
  proj.kept.assign(ranked.order.begin(),
                   ranked.order.begin() + static_cast<std::ptrdiff_t>(keep_count));
  std::sort(proj.kept.begin(), proj.kept.end());
  return proj;
}

}  // namespace hamdet
