// Command-line frontend: dataset generation, feature ranking,
// classification, the repeated-holdout evaluation protocol, ROC and MAA
// reports, and a self-contained worked example.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hamdet/classifiers.hpp"
#include "hamdet/dataset_io.hpp"
#include "hamdet/evaluation.hpp"
#include "hamdet/kmedoids.hpp"
#include "hamdet/report_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;   // malformed dataset / unreadable file
constexpr int kExitConfig = 3;  // bad flags or option values

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    hamdet::write_file_atomic(out_path, content);
  }
}

std::vector<int> parse_alpha_grid(const std::string& text) {
  if (text == "grid") {
    return {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  }
  std::vector<int> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("bad alpha value: " + item);
    }
    grid.push_back(v);
  }
  if (grid.empty()) {
    throw std::invalid_argument("alpha grid is empty");
  }
  return grid;
}

std::vector<hamdet::Algo> parse_algo_list(const std::string& text) {
  if (text == "all") {
    return {hamdet::Algo::fnn, hamdet::Algo::ann, hamdet::Algo::wann,
            hamdet::Algo::kmnn, hamdet::Algo::pdme};
  }
  std::vector<hamdet::Algo> algos;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    algos.push_back(hamdet::algo_from_name(item));
  }
  if (algos.empty()) {
    throw std::invalid_argument("algorithm list is empty");
  }
  return algos;
}

struct CommonEvalOptions {
  std::string data_path;
  std::string algo_text = "all";
  std::string alpha_text = "100";
  int repeats = 10;
  std::uint64_t seed = 42;
  double trim_fraction = 0.10;
  std::string tie = "malware";
  std::string format = "json";
  std::string out_path;
  bool global_ranking = false;
  int trees = 100;
  int max_depth = 8;
};

hamdet::ExperimentSpec build_spec(const CommonEvalOptions& opt) {
  hamdet::ExperimentSpec spec;
  spec.algorithms = parse_algo_list(opt.algo_text);
  spec.alpha_grid = parse_alpha_grid(opt.alpha_text);
  spec.repeats = opt.repeats;
  spec.master_seed = opt.seed;
  spec.trim_fraction = opt.trim_fraction;
  spec.tie = hamdet::tie_rule_from_name(opt.tie);
  spec.forest.n_trees = opt.trees;
  spec.forest.max_depth = opt.max_depth;
  spec.rank_per_fold = !opt.global_ranking;
  return spec;
}

int cmd_synth(const std::string& out_path, std::size_t n_per_class,
              std::uint32_t dim, std::uint32_t block_size, double noise,
              std::uint64_t seed) {
  hamdet::SyntheticSpec spec;
  spec.n_per_class = n_per_class;
  spec.dim = dim;
  spec.noise = noise;
  spec.rng_seed = seed;
  if (2 * block_size > dim) {
    throw std::invalid_argument("two disjoint blocks need 2*block-size <= dim");
  }
  for (std::uint32_t j = 0; j < block_size; ++j) {
    spec.benign_block.push_back(j);
    spec.malware_block.push_back(block_size + j);
  }
  const auto data = hamdet::generate_synthetic(spec);
  emit(out_path, hamdet::serialize_dataset(data));
  return kExitOk;
}

int cmd_rank(const std::string& data_path, int trees, int max_depth,
             std::uint64_t seed, const std::string& format,
             const std::string& out_path) {
  const auto data = hamdet::read_dataset_file(data_path);
  hamdet::ForestConfig cfg;
  cfg.n_trees = trees;
  cfg.max_depth = max_depth;
  cfg.rng_seed = seed;
  const auto ranked = hamdet::fit_forest_importance(data, cfg);

  if (format == "json") {
    nlohmann::ordered_json j;
    j["order"] = ranked.order;
    j["importances"] = ranked.importances;
    emit(out_path, j.dump(2) + "\n");
  } else {
    std::string csv = data.has_feature_names()
                          ? "rank,feature,importance,name\n"
                          : "rank,feature,importance\n";
    char buf[64];
    for (std::size_t r = 0; r < ranked.order.size(); ++r) {
      const auto j = ranked.order[r];
      std::snprintf(buf, sizeof buf, "%zu,%u,%.9g", r, j,
                    ranked.importances[j]);
      csv += buf;
      if (data.has_feature_names()) csv += "," + data.feature_names()[j];
      csv += "\n";
    }
    emit(out_path, csv);
  }
  return kExitOk;
}

int cmd_classify(const std::string& train_path, const std::string& input_path,
                 const std::string& algo_text, double trim_fraction,
                 const std::string& tie_text, const std::string& out_path) {
  const auto train = hamdet::read_dataset_file(train_path);
  const auto input = hamdet::read_dataset_file(input_path);
  if (train.dim() != input.dim()) {
    throw std::invalid_argument("train and input dimensions differ");
  }
  const auto algo = hamdet::algo_from_name(algo_text);
  const auto tie = hamdet::tie_rule_from_name(tie_text);

  const hamdet::HammingIndex index(train);
  hamdet::FeatureWeights weights;
  hamdet::EntropyModel model;
  if (algo == hamdet::Algo::wann) {
    weights = hamdet::compute_feature_weights(train);
  }
  if (algo == hamdet::Algo::pdme) model = hamdet::fit_entropy_model(train);

  std::string out;
  for (const auto& q : input.samples()) {
    int label = 0;
    switch (algo) {
      case hamdet::Algo::fnn:
        label = hamdet::fnn_outcome(index, q).label;
        break;
      case hamdet::Algo::ann:
        label = hamdet::ann_outcome(index, q, tie).label;
        break;
      case hamdet::Algo::wann:
        label = hamdet::wann_outcome(train, weights, q, tie).label;
        break;
      case hamdet::Algo::kmnn:
        label = hamdet::kmnn_outcome(index, q, {trim_fraction, tie}).label;
        break;
      case hamdet::Algo::pdme:
        label = hamdet::pdme_outcome(q, train, model, tie).label;
        break;
    }
    out += std::to_string(label) + "\n";
  }
  emit(out_path, out);
  return kExitOk;
}

int cmd_evaluate(const CommonEvalOptions& opt) {
  const auto data = hamdet::read_dataset_file(opt.data_path);
  const auto spec = build_spec(opt);
  const auto report = hamdet::run_protocol(data, spec);
  if (opt.format == "json") {
    emit(opt.out_path, hamdet::report_to_json(report).dump(2) + "\n");
  } else {
    emit(opt.out_path, hamdet::report_to_table_csv(report));
  }
  return kExitOk;
}

int cmd_maa(const CommonEvalOptions& opt) {
  const auto data = hamdet::read_dataset_file(opt.data_path);
  auto spec = build_spec(opt);
  spec.algorithms.clear();  // bounds only
  const auto report = hamdet::run_protocol(data, spec);
  if (opt.format == "json") {
    emit(opt.out_path, hamdet::report_to_json(report).dump(2) + "\n");
  } else {
    emit(opt.out_path, hamdet::report_to_table_csv(report));
  }
  return kExitOk;
}

int cmd_roc(const CommonEvalOptions& opt) {
  const auto data = hamdet::read_dataset_file(opt.data_path);
  auto spec = build_spec(opt);
  spec.algorithms = {hamdet::algo_from_name(opt.algo_text)};
  if (spec.alpha_grid.size() != 1) {
    throw std::invalid_argument("roc needs a single alpha value");
  }
  spec.repeats = 1;
  spec.include_roc = true;
  const auto report = hamdet::run_protocol(data, spec);
  emit(opt.out_path,
       hamdet::roc_to_csv(report.cells.at(0).repeats.at(0).roc_test));
  return kExitOk;
}

std::string join_sample_names(const std::vector<std::size_t>& indices) {
  std::string out = "{";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += ", ";
    out += "S" + std::to_string(indices[k] + 1);
  }
  return out + "}";
}

int cmd_toy() {
  // The worked ten-sample example, transcribed with its original 1-based
  // indices and replayed through the full pipeline.
  const char* transcription =
      "dim 10\n"
      "samples 10\n"
      "index-base 1\n"
      "0 2 7 8\n"
      "0 4 9\n"
      "1 1 2\n"
      "1 3 8\n"
      "1 2 9\n"
      "0 5 10\n"
      "1 1 8\n"
      "1 4 7\n"
      "0 3 6\n"
      "0 1 4 9\n";
  std::istringstream in(transcription);
  const auto train = hamdet::parse_sparse_dataset(in);
  const hamdet::SparseBinaryVector query({3, 7}, 10);  // {4, 8} 1-based

  std::string out;
  out += "worked example: 10 training samples, m = 10, query X = {4, 8} "
         "(1-based)\n\n";

  out += "distances to X:";
  for (std::size_t i = 0; i < train.size(); ++i) {
    out += " S" + std::to_string(i + 1) + "=" +
           std::to_string(hamdet::hamming_distance(query, train.sample(i)));
  }
  out += "\n\n";

  const hamdet::HammingIndex index(train);
  const auto fnn = hamdet::fnn_outcome(index, query);
  out += "FNN: nearest sample S" + std::to_string(fnn.voters[0] + 1) +
         " -> prediction " + std::to_string(fnn.label) + "\n";

  const auto nn = index.nearest(query);
  const auto ann = hamdet::ann_from_neighbors(nn, train);
  out += "ANN: neighbors " + join_sample_names(nn.member_indices) + " labels {";
  for (std::size_t k = 0; k < nn.member_labels.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(nn.member_labels[k]);
  }
  out += "} -> prediction " + std::to_string(ann.label) + "\n";

  const auto weights = hamdet::compute_feature_weights(train);
  out += "WANN: feature weights [";
  for (std::size_t j = 0; j < weights.counts.size(); ++j) {
    if (j > 0) out += " ";
    out += std::to_string(weights.counts[j]);
  }
  out += "]\n      sample weights  [";
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (i > 0) out += " ";
    out += std::to_string(hamdet::sample_weight(train.sample(i), weights));
  }
  out += "], weight(X) = " +
         std::to_string(hamdet::sample_weight(query, weights)) + "\n";
  const auto wann = hamdet::wann_outcome(train, weights, query);
  out += "      selected " + join_sample_names(wann.voters) +
         " -> prediction " + std::to_string(wann.label) + "\n";

  // The example trims 25% instead of the default 10% so one neighbor is
  // dropped.
  std::vector<hamdet::SparseBinaryVector> members;
  for (auto i : nn.member_indices) members.push_back(train.sample(i));
  const auto clustering = hamdet::two_medoid_cluster(members);
  const auto scores = hamdet::ch_distance_scores(members, clustering);
  auto cluster_names = [&](hamdet::ClusterId id) {
    std::vector<std::size_t> training;
    for (auto pos : clustering.members_of(id)) {
      training.push_back(nn.member_indices[pos]);
    }
    return join_sample_names(training);
  };
  out += "KMNN (trim 25%): clusters " + cluster_names(hamdet::ClusterId::a) +
         " / " + cluster_names(hamdet::ClusterId::b) + "\n";
  out += "      head-distance scores [";
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (k > 0) out += " ";
    out += "S" + std::to_string(nn.member_indices[k] + 1) + "=" +
           std::to_string(scores[k]);
  }
  out += "]\n";
  const auto kmnn =
      hamdet::kmnn_from_neighbors(nn, train, {0.25, hamdet::TieRule::malware});
  out += "      survivors " + join_sample_names(kmnn.voters) +
         " -> prediction " + std::to_string(kmnn.label) + "\n\n";

  out += "predictions: FNN=" + std::to_string(fnn.label) +
         " ANN=" + std::to_string(ann.label) +
         " WANN=" + std::to_string(wann.label) +
         " KMNN=" + std::to_string(kmnn.label) + "\n";
  std::cout << out;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-based malware detection over sparse binary "
               "feature vectors"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a planted synthetic dataset");
  std::string synth_out;
  std::size_t synth_n = 500;
  std::uint32_t synth_dim = 200;
  std::uint32_t synth_block = 20;
  double synth_noise = 0.02;
  std::uint64_t synth_seed = 1;
  synth->add_option("--out", synth_out, "Output path (default stdout)");
  synth->add_option("--n-per-class", synth_n, "Samples per class");
  synth->add_option("--dim", synth_dim, "Feature count m");
  synth->add_option("--block-size", synth_block, "Planted block width per class");
  synth->add_option("--noise", synth_noise, "Bit flip probability [0, 0.5)");
  synth->add_option("--seed", synth_seed, "Generator seed");

  // rank
  auto* rank = app.add_subcommand("rank", "Rank features by forest importance");
  std::string rank_data;
  std::string rank_format = "json";
  std::string rank_out;
  int rank_trees = 100;
  int rank_depth = 8;
  std::uint64_t rank_seed = 0;
  rank->add_option("--data", rank_data, "Dataset file")->required();
  rank->add_option("--trees", rank_trees, "Number of trees");
  rank->add_option("--max-depth", rank_depth, "Tree depth limit");
  rank->add_option("--seed", rank_seed, "Forest seed");
  rank->add_option("--format", rank_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  rank->add_option("--out", rank_out, "Output path (default stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "Predict labels for a sample file");
  std::string cls_train;
  std::string cls_input;
  std::string cls_algo = "ann";
  std::string cls_tie = "malware";
  std::string cls_out;
  double cls_trim = 0.10;
  classify->add_option("--train", cls_train, "Training dataset file")->required();
  classify->add_option("--input", cls_input, "Samples to classify (labels ignored)")
      ->required();
  classify->add_option("--algo", cls_algo, "fnn|ann|wann|kmnn|pdme");
  classify->add_option("--trim-fraction", cls_trim, "KMNN trim fraction");
  classify->add_option("--tie", cls_tie, "malware|benign|index");
  classify->add_option("--out", cls_out, "Output path (default stdout)");

  // evaluate / maa / roc share most options
  CommonEvalOptions eval_opt;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Repeated train/valid/test protocol with feature ranking");
  CommonEvalOptions maa_opt;
  auto* maa = app.add_subcommand("maa", "Maximum-available-accuracy bounds");
  CommonEvalOptions roc_opt;
  roc_opt.algo_text = "ann";
  auto* roc = app.add_subcommand("roc", "ROC curve of one protocol split");

  auto add_eval_options = [](CLI::App* cmd, CommonEvalOptions& opt,
                             bool with_algo) {
    cmd->add_option("--data", opt.data_path, "Dataset file")->required();
    if (with_algo) {
      cmd->add_option("--algo", opt.algo_text,
                      "Comma list of fnn|ann|wann|kmnn|pdme, or 'all'");
    }
    cmd->add_option("--alpha", opt.alpha_text,
                    "Feature percentage 1-100, comma list, or 'grid'");
    cmd->add_option("--repeats", opt.repeats, "Number of shuffled repeats");
    cmd->add_option("--seed", opt.seed, "Master seed");
    cmd->add_option("--trim-fraction", opt.trim_fraction, "KMNN trim fraction");
    cmd->add_option("--tie", opt.tie, "malware|benign|index");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out_path, "Output path (default stdout)");
    cmd->add_flag("--global-ranking", opt.global_ranking,
                  "Rank features once on the full dataset");
    cmd->add_option("--trees", opt.trees, "Ranking forest size");
    cmd->add_option("--max-depth", opt.max_depth, "Ranking tree depth");
  };
  add_eval_options(evaluate, eval_opt, true);
  add_eval_options(maa, maa_opt, false);
  add_eval_options(roc, roc_opt, true);
  roc->get_option("--repeats")->description("(ignored; roc uses one split)");

  // toy
  app.add_subcommand("toy", "Replay the built-in worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand("synth")) {
      return cmd_synth(synth_out, synth_n, synth_dim, synth_block, synth_noise,
                       synth_seed);
    }
    if (app.got_subcommand("rank")) {
      return cmd_rank(rank_data, rank_trees, rank_depth, rank_seed,
                      rank_format, rank_out);
    }
    if (app.got_subcommand("classify")) {
      return cmd_classify(cls_train, cls_input, cls_algo, cls_trim, cls_tie,
                          cls_out);
    }
    if (app.got_subcommand("evaluate")) return cmd_evaluate(eval_opt);
    if (app.got_subcommand("maa")) return cmd_maa(maa_opt);
    if (app.got_subcommand("roc")) return cmd_roc(roc_opt);
    if (app.got_subcommand("toy")) return cmd_toy();
  } catch (const hamdet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitConfig;
}
