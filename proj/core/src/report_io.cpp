#include "hamdet/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hamdet {

namespace {

using nlohmann::ordered_json;

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

ordered_json metrics_to_json(const MetricSet& m) {
  ordered_json j;
  j["accuracy"] = m.accuracy;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["fpr_paper"] = m.fpr_paper;
  j["fpr_standard"] = m.fpr_standard;
  j["auc_paper"] = m.auc_paper;
  j["flags"] = m.flags;
  return j;
}

ordered_json maa_to_json(const MaaBounds& b) {
  ordered_json j;
  j["max_accuracy"] = b.max_accuracy;
  j["min_fpr"] = b.min_fpr;
  j["max_auc"] = b.max_auc;
  return j;
}

ordered_json roc_to_json(const RocCurve& curve) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : curve.points) {
    arr.push_back({p.threshold, p.fpr, p.tpr});
  }
  return arr;
}

}  // namespace

std::string tie_rule_name(TieRule tie) {
  switch (tie) {
    case TieRule::malware:
      return "malware";
    case TieRule::benign:
      return "benign";
    case TieRule::lowest_index:
      return "index";
  }
  throw std::logic_error("unknown tie rule");
}

TieRule tie_rule_from_name(const std::string& name) {
  if (name == "malware") return TieRule::malware;
  if (name == "benign") return TieRule::benign;
  if (name == "index") return TieRule::lowest_index;
  throw std::invalid_argument("unknown tie rule: " + name);
}

nlohmann::ordered_json report_to_json(const EvaluationReport& report) {
  ordered_json j;
  j["schema"] = "hamdet-report-v1";

  ordered_json cfg;
  ordered_json algos = ordered_json::array();
  for (Algo a : report.spec.algorithms) algos.push_back(algo_name(a));
  cfg["algorithms"] = algos;
  cfg["alpha_grid"] = report.spec.alpha_grid;
  cfg["repeats"] = report.spec.repeats;
  cfg["master_seed"] = report.spec.master_seed;
  cfg["seeds"] = report.spec.seeds;
  cfg["train_ratio"] = report.spec.train_ratio;
  cfg["valid_ratio"] = report.spec.valid_ratio;
  cfg["trim_fraction"] = report.spec.trim_fraction;
  cfg["tie_rule"] = tie_rule_name(report.spec.tie);
  cfg["rank_per_fold"] = report.spec.rank_per_fold;
  cfg["forest"] = {{"n_trees", report.spec.forest.n_trees},
                   {"max_depth", report.spec.forest.max_depth},
                   {"min_samples_split", report.spec.forest.min_samples_split},
                   {"bootstrap_fraction", report.spec.forest.bootstrap_fraction},
                   {"bootstrap", report.spec.forest.bootstrap}};
  cfg["n_samples"] = report.n_samples;
  cfg["dim"] = report.dim;
  cfg["fold_sizes"] = {{"train", report.fold_sizes[0]},
                       {"valid", report.fold_sizes[1]},
                       {"test", report.fold_sizes[2]}};
  j["config"] = cfg;

  ordered_json results = ordered_json::array();
  for (const auto& cell : report.cells) {
    ordered_json c;
    c["algo"] = algo_name(cell.algo);
    c["alpha"] = cell.alpha;
    ordered_json reps = ordered_json::array();
    for (std::size_t r = 0; r < cell.repeats.size(); ++r) {
      const CellResult& rep = cell.repeats[r];
      ordered_json rj;
      rj["seed"] = report.spec.seeds[r];
      rj["valid"] = metrics_to_json(rep.valid);
      rj["test"] = metrics_to_json(rep.test);
      rj["auc_roc_test"] = rep.auc_roc_test;  // null for fnn
      if (!rep.roc_test.points.empty()) {
        rj["roc_test"] = roc_to_json(rep.roc_test);
      }
      reps.push_back(std::move(rj));
    }
    c["repeats"] = std::move(reps);
    c["mean"] = {{"valid", metrics_to_json(cell.mean_valid)},
                 {"test", metrics_to_json(cell.mean_test)},
                 {"auc_roc_test", cell.mean_auc_roc_test}};
    results.push_back(std::move(c));
  }
  j["results"] = std::move(results);

  ordered_json maa = ordered_json::array();
  for (const auto& am : report.maa) {
    ordered_json mj;
    mj["alpha"] = am.alpha;
    ordered_json reps = ordered_json::array();
    for (const auto& b : am.repeats) reps.push_back(maa_to_json(b));
    mj["repeats"] = std::move(reps);
    mj["mean"] = maa_to_json(am.mean);
    maa.push_back(std::move(mj));
  }
  j["maa"] = std::move(maa);
  return j;
}

std::string report_to_table_csv(const EvaluationReport& report) {
  std::string out = "FR";
  for (Algo a : report.spec.algorithms) {
    const std::string n = algo_name(a);
    out += "," + n + "_Acc," + n + "_FPR," + n + "_AUC";
  }
  out += ",MAA_Acc,MAA_FPR,MAA_AUC\n";

  for (std::size_t ai = 0; ai < report.spec.alpha_grid.size(); ++ai) {
    const int alpha = report.spec.alpha_grid[ai];
    out += std::to_string(alpha) + "%";
    for (std::size_t gi = 0; gi < report.spec.algorithms.size(); ++gi) {
      const auto& cell =
          report.cells[ai * report.spec.algorithms.size() + gi];
      out += "," + fixed2(cell.mean_test.accuracy * 100.0);
      out += "," + fixed2(cell.mean_test.fpr_paper * 100.0);
      out += "," + fixed2(cell.mean_test.auc_paper * 100.0);
    }
    const auto& maa = report.maa[ai].mean;
    out += "," + fixed2(maa.max_accuracy * 100.0);
    out += "," + fixed2(maa.min_fpr * 100.0);
    out += "," + fixed2(maa.max_auc * 100.0);
    out += "\n";
  }
  return out;
}

std::string roc_to_csv(const RocCurve& curve) {
  std::string out = "fpr,tpr\n";
  char buf[80];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f\n", p.fpr, p.tpr);
    out += buf;
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    f.write(content.data(),
            static_cast<std::streamsize>(content.size()));
    if (!f) {
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace hamdet
