#include "hamdet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace hamdet {

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::fnn:
      return "fnn";
    case Algo::ann:
      return "ann";
    case Algo::wann:
      return "wann";
    case Algo::kmnn:
      return "kmnn";
    case Algo::pdme:
      return "pdme";
  }
  throw std::logic_error("unknown algorithm");
}

Algo algo_from_name(const std::string& name) {
  if (name == "fnn") return Algo::fnn;
  if (name == "ann") return Algo::ann;
  if (name == "wann") return Algo::wann;
  if (name == "kmnn") return Algo::kmnn;
  if (name == "pdme") return Algo::pdme;
  throw std::invalid_argument("unknown algorithm name: " + name);
}

MaaBounds maa_bounds(const LabeledDataset& test, const LabeledDataset& train) {
  if (test.size() == 0 || train.size() == 0) {
    throw std::invalid_argument("maa bounds need non-empty test and train");
  }
  const HammingIndex index(train);
  std::vector<int> best_case;
  best_case.reserve(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    const NeighborSet nn = index.nearest(test.sample(i));
    const int actual = test.label(i);
    const bool attainable =
        std::find(nn.member_labels.begin(), nn.member_labels.end(), actual) !=
        nn.member_labels.end();
    best_case.push_back(attainable ? actual : 1 - actual);
  }
  const MetricSet m = compute_metrics(confusion(best_case, test.labels()));
  return MaaBounds{m.accuracy, m.fpr_paper, m.auc_paper};
}

RocCurve roc_from_scores(const std::vector<double>& scores,
                         const std::vector<int>& actual) {
  if (scores.empty() || scores.size() != actual.size()) {
    throw std::invalid_argument("scores and labels must align and be non-empty");
  }
  std::uint64_t positives = 0;
  for (int y : actual) positives += static_cast<std::uint64_t>(y);
  const std::uint64_t negatives = actual.size() - positives;

  std::vector<double> thresholds;
  thresholds.push_back(0.0);
  {
    std::vector<double> distinct(scores);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (double s : distinct) {
      if (s > 0.0) thresholds.push_back(s);
    }
  }
  thresholds.push_back(2.0);  // above every share: nothing predicted malware

  RocCurve curve;
  curve.points.reserve(thresholds.size());
  for (double t : thresholds) {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) {
        actual[i] == 1 ? ++tp : ++fp;
      }
    }
    RocPoint p;
    p.threshold = t;
    p.tpr = positives == 0 ? 0.0
                           : static_cast<double>(tp) /
                                 static_cast<double>(positives);
    p.fpr = negatives == 0 ? 0.0
                           : static_cast<double>(fp) /
                                 static_cast<double>(negatives);
    curve.points.push_back(p);
  }
  return curve;
}

RocCurve roc_curve(const LabeledDataset& test, const LabeledDataset& train,
                   Algo algo, const RocOptions& opts) {
  if (test.size() == 0) {
    throw std::invalid_argument("roc curve needs a non-empty test set");
  }
  if (algo == Algo::fnn) {
    throw std::invalid_argument(
        "fnn exposes only the degenerate {0,1} score; no roc curve");
  }
  const HammingIndex index(train);
  FeatureWeights weights;
  EntropyModel model;
  if (algo == Algo::wann) weights = compute_feature_weights(train);
  if (algo == Algo::pdme) model = fit_entropy_model(train, opts.entropy_log_base);

  std::vector<double> scores;
  scores.reserve(test.size());
  for (const auto& q : test.samples()) {
    switch (algo) {
      case Algo::ann:
        scores.push_back(ann_outcome(index, q, opts.tie).malware_share);
        break;
      case Algo::wann:
        scores.push_back(
            wann_outcome(train, weights, q, opts.tie).malware_share);
        break;
      case Algo::kmnn:
        scores.push_back(kmnn_outcome(index, q, opts.kmnn).malware_share);
        break;
      case Algo::pdme:
        scores.push_back(
            pdme_outcome(q, train, model, opts.tie).malware_share);
        break;
      case Algo::fnn:
        break;  // rejected above
    }
  }
  return roc_from_scores(scores, test.labels());
}

double roc_auc(const RocCurve& curve) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size());
  for (const auto& p : curve.points) pts.emplace_back(p.fpr, p.tpr);
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) *
            (pts[i].second + pts[i - 1].second) * 0.5;
  }
  return area;
}

namespace {

std::size_t ratio_floor(double ratio, std::size_t n) {
  // Slack so binary representations of ratios like 0.6 don't floor an
  // intended integer product down by one.
  return static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(n) + 1e-9));
}

}  // namespace

FoldSplit protocol_fold_split(std::size_t n, double train_ratio,
                              double valid_ratio, std::uint64_t repeat_seed) {
  std::mt19937_64 derive(repeat_seed);
  std::mt19937_64 shuffle_rng(derive());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), shuffle_rng);

  const std::size_t n_train = ratio_floor(train_ratio, n);
  const std::size_t n_valid = ratio_floor(valid_ratio, n);
  FoldSplit folds;
  folds.train.assign(order.begin(), order.begin() + n_train);
  folds.valid.assign(order.begin() + n_train,
                     order.begin() + n_train + n_valid);
  folds.test.assign(order.begin() + n_train + n_valid, order.end());
  return folds;
}

namespace {

std::vector<std::uint64_t> resolve_seeds(const ExperimentSpec& spec) {
  if (!spec.seeds.empty()) {
    if (spec.seeds.size() != static_cast<std::size_t>(spec.repeats)) {
      throw std::invalid_argument("explicit seed list must match repeats");
    }
    std::set<std::uint64_t> unique(spec.seeds.begin(), spec.seeds.end());
    if (unique.size() != spec.seeds.size()) {
      throw std::invalid_argument("per-repeat seeds must be distinct");
    }
    return spec.seeds;
  }
  std::mt19937_64 gen(spec.master_seed);
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> seeds;
  while (seeds.size() < static_cast<std::size_t>(spec.repeats)) {
    const std::uint64_t s = gen();
    if (seen.insert(s).second) seeds.push_back(s);
  }
  return seeds;
}

struct RepeatOutcome {
  // cells[alpha_idx][algo_idx]
  std::vector<std::vector<CellResult>> cells;
  std::vector<MaaBounds> maa;  // per alpha
};

RepeatOutcome run_one_repeat(const LabeledDataset& data,
                             const ExperimentSpec& spec, std::uint64_t seed,
                             const RankedFeatures* global_ranking) {
  std::mt19937_64 derive(seed);
  derive();  // first draw feeds the shuffle (see protocol_fold_split)
  const std::uint64_t forest_seed = derive();

  const FoldSplit folds = protocol_fold_split(data.size(), spec.train_ratio,
                                              spec.valid_ratio, seed);

  const LabeledDataset train_fold = data.subset(folds.train);
  const LabeledDataset valid_fold = data.subset(folds.valid);
  const LabeledDataset test_fold = data.subset(folds.test);

  RankedFeatures local_ranking;
  const RankedFeatures* ranking = global_ranking;
  if (ranking == nullptr) {
    ForestConfig forest = spec.forest;
    forest.rng_seed = forest_seed;
    local_ranking = fit_forest_importance(train_fold, forest);
    ranking = &local_ranking;
  }

  const bool needs_hamming_neighbors =
      std::any_of(spec.algorithms.begin(), spec.algorithms.end(), [](Algo a) {
        return a == Algo::fnn || a == Algo::ann || a == Algo::kmnn;
      });

  RepeatOutcome out;
  out.cells.resize(spec.alpha_grid.size());
  out.maa.resize(spec.alpha_grid.size());

  for (std::size_t ai = 0; ai < spec.alpha_grid.size(); ++ai) {
    const FeatureProjection proj =
        select_top_fraction(*ranking, spec.alpha_grid[ai]);
    const LabeledDataset train_p = proj.apply(train_fold);
    const LabeledDataset valid_p = proj.apply(valid_fold);
    const LabeledDataset test_p = proj.apply(test_fold);

    const HammingIndex index(train_p, spec.dense_cap);
    FeatureWeights weights;
    std::vector<std::uint64_t> train_weights;
    EntropyModel emodel;
    bool have_weights = false;
    bool have_emodel = false;
    for (Algo a : spec.algorithms) {
      if (a == Algo::wann && !have_weights) {
        weights = compute_feature_weights(train_p);
        train_weights = compute_sample_weights(train_p, weights);
        have_weights = true;
      }
      if (a == Algo::pdme && !have_emodel) {
        emodel = fit_entropy_model(train_p, spec.entropy_log_base);
        have_emodel = true;
      }
    }

    auto score_fold = [&](const LabeledDataset& fold,
                          std::vector<std::vector<int>>& predictions,
                          std::vector<std::vector<double>>& shares) {
      predictions.assign(spec.algorithms.size(), {});
      shares.assign(spec.algorithms.size(), {});
      for (std::size_t qi = 0; qi < fold.size(); ++qi) {
        const auto& q = fold.sample(qi);
        NeighborSet nn;
        if (needs_hamming_neighbors) nn = index.nearest(q);
        for (std::size_t gi = 0; gi < spec.algorithms.size(); ++gi) {
          VoteOutcome o;
          switch (spec.algorithms[gi]) {
            case Algo::fnn:
              o = fnn_from_neighbors(nn, train_p);
              break;
            case Algo::ann:
              o = ann_from_neighbors(nn, train_p, spec.tie);
              break;
            case Algo::kmnn:
              o = kmnn_from_neighbors(nn, train_p,
                                      KmnnConfig{spec.trim_fraction, spec.tie});
              break;
            case Algo::wann:
              o = wann_outcome(train_p, weights, train_weights, q, spec.tie);
              break;
            case Algo::pdme:
              o = pdme_outcome(q, train_p, emodel, spec.tie);
              break;
          }
          predictions[gi].push_back(o.label);
          shares[gi].push_back(o.malware_share);
        }
      }
    };

    std::vector<std::vector<int>> valid_pred;
    std::vector<std::vector<double>> valid_share;
    score_fold(valid_p, valid_pred, valid_share);
    std::vector<std::vector<int>> test_pred;
    std::vector<std::vector<double>> test_share;
    score_fold(test_p, test_pred, test_share);

    out.cells[ai].resize(spec.algorithms.size());
    for (std::size_t gi = 0; gi < spec.algorithms.size(); ++gi) {
      CellResult& cell = out.cells[ai][gi];
      cell.valid =
          compute_metrics(confusion(valid_pred[gi], valid_p.labels()));
      cell.test = compute_metrics(confusion(test_pred[gi], test_p.labels()));
      if (spec.algorithms[gi] != Algo::fnn) {
        const RocCurve curve =
            roc_from_scores(test_share[gi], test_p.labels());
        cell.auc_roc_test = roc_auc(curve);
        if (spec.include_roc) cell.roc_test = curve;
      }
    }
    out.maa[ai] = maa_bounds(test_p, train_p);
  }
  return out;
}

MetricSet mean_metrics(const std::vector<const MetricSet*>& parts) {
  MetricSet mean;
  const auto n = static_cast<double>(parts.size());
  std::set<std::string> flags;
  for (const auto* m : parts) {
    mean.accuracy += m->accuracy;
    mean.precision += m->precision;
    mean.recall += m->recall;
    mean.f1 += m->f1;
    mean.fpr_paper += m->fpr_paper;
    mean.fpr_standard += m->fpr_standard;
    mean.auc_paper += m->auc_paper;
    flags.insert(m->flags.begin(), m->flags.end());
  }
  mean.accuracy /= n;
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  mean.fpr_paper /= n;
  mean.fpr_standard /= n;
  mean.auc_paper /= n;
  mean.flags.assign(flags.begin(), flags.end());
  return mean;
}

}  // namespace

EvaluationReport run_protocol(const LabeledDataset& data,
                              const ExperimentSpec& spec) {
  if (spec.repeats < 1) {
    throw std::invalid_argument("protocol needs at least one repeat");
  }
  // An empty algorithm list is allowed: the report then carries only the
  // MAA bounds.
  if (spec.alpha_grid.empty()) {
    throw std::invalid_argument("protocol needs a feature-fraction grid");
  }
  for (int alpha : spec.alpha_grid) {
    if (alpha < 1 || alpha > 100) {
      throw std::invalid_argument("alpha percent must lie in [1, 100]");
    }
  }
  if (spec.train_ratio <= 0.0 || spec.valid_ratio < 0.0 ||
      spec.train_ratio + spec.valid_ratio >= 1.0) {
    throw std::invalid_argument("split ratios must be positive and sum < 1");
  }
  const std::size_t n = data.size();
  const std::size_t n_train = ratio_floor(spec.train_ratio, n);
  const std::size_t n_valid = ratio_floor(spec.valid_ratio, n);
  if (n_train == 0 || n_valid == 0 || n_train + n_valid >= n) {
    throw std::invalid_argument("dataset too small for the requested folds");
  }

  EvaluationReport report;
  report.spec = spec;
  report.spec.seeds = resolve_seeds(spec);
  report.n_samples = n;
  report.dim = data.dim();
  report.fold_sizes = {n_train, n_valid, n - n_train - n_valid};

  RankedFeatures global_ranking;
  const RankedFeatures* global = nullptr;
  if (!spec.rank_per_fold) {
    ForestConfig forest = spec.forest;
    forest.rng_seed = spec.master_seed;
    global_ranking = fit_forest_importance(data, forest);
    global = &global_ranking;
  }

  std::vector<std::future<RepeatOutcome>> futures;
  futures.reserve(report.spec.seeds.size());
  for (std::uint64_t seed : report.spec.seeds) {
    futures.push_back(std::async(std::launch::async, [&, seed] {
      return run_one_repeat(data, spec, seed, global);
    }));
  }
  std::vector<RepeatOutcome> outcomes;
  outcomes.reserve(futures.size());
  for (auto& f : futures) outcomes.push_back(f.get());

  for (std::size_t ai = 0; ai < spec.alpha_grid.size(); ++ai) {
    for (std::size_t gi = 0; gi < spec.algorithms.size(); ++gi) {
      AlgoAlphaResult result;
      result.algo = spec.algorithms[gi];
      result.alpha = spec.alpha_grid[ai];
      std::vector<const MetricSet*> valid_parts;
      std::vector<const MetricSet*> test_parts;
      double auc_sum = 0.0;
      bool auc_defined = true;
      for (const auto& rep : outcomes) {
        result.repeats.push_back(rep.cells[ai][gi]);
        valid_parts.push_back(&result.repeats.back().valid);
        test_parts.push_back(&result.repeats.back().test);
        if (std::isnan(rep.cells[ai][gi].auc_roc_test)) {
          auc_defined = false;
        } else {
          auc_sum += rep.cells[ai][gi].auc_roc_test;
        }
      }
      result.mean_valid = mean_metrics(valid_parts);
      result.mean_test = mean_metrics(test_parts);
      if (auc_defined) {
        result.mean_auc_roc_test =
            auc_sum / static_cast<double>(outcomes.size());
      }
      report.cells.push_back(std::move(result));
    }
    AlphaMaa maa;
    maa.alpha = spec.alpha_grid[ai];
    for (const auto& rep : outcomes) maa.repeats.push_back(rep.maa[ai]);
    for (const auto& b : maa.repeats) {
      maa.mean.max_accuracy += b.max_accuracy;
      maa.mean.min_fpr += b.min_fpr;
      maa.mean.max_auc += b.max_auc;
    }
    const auto r = static_cast<double>(maa.repeats.size());
    maa.mean.max_accuracy /= r;
    maa.mean.min_fpr /= r;
    maa.mean.max_auc /= r;
    report.maa.push_back(std::move(maa));
  }
  return report;
}

}  // namespace hamdet
