#include "hamdet/dataset_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "hamdet/report_io.hpp"

namespace hamdet {

namespace {

struct Header {
  std::uint32_t dim = 0;
  std::size_t samples = 0;
  int index_base = 0;
  bool have_dim = false;
  bool have_samples = false;
};

std::uint32_t convert_index(long long raw, const Header& h, std::size_t line) {
  const long long lo = h.index_base;
  const long long hi = static_cast<long long>(h.dim) + h.index_base - 1;
  if (raw < lo || raw > hi) {
    throw ParseError(line, "feature index " + std::to_string(raw) +
                               " out of range [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
  }
  return static_cast<std::uint32_t>(raw - h.index_base);
}

}  // namespace

LabeledDataset parse_sparse_dataset(std::istream& in) {
  Header header;
  std::vector<SparseBinaryVector> samples;
  std::vector<int> labels;
  std::vector<std::pair<std::uint32_t, std::string>> named;

  std::string line;
  std::size_t line_no = 0;
  bool names_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;

    std::istringstream fields(line);
    if (std::isalpha(static_cast<unsigned char>(line[start]))) {
      if (!samples.empty()) {
        throw ParseError(line_no, "header line after the first record");
      }
      std::string key;
      fields >> key;
      // dim/samples/index-base are frozen once a feature entry has used
      // them for range checks and base conversion.
      if (names_seen && key != "feature") {
        throw ParseError(line_no, "header key after feature entries");
      }
      if (key == "dim") {
        long long v = -1;
        if (!(fields >> v) || v < 1) {
          throw ParseError(line_no, "dim must be a positive integer");
        }
        header.dim = static_cast<std::uint32_t>(v);
        header.have_dim = true;
      } else if (key == "samples") {
        long long v = -1;
        if (!(fields >> v) || v < 0) {
          throw ParseError(line_no, "samples must be a non-negative integer");
        }
        header.samples = static_cast<std::size_t>(v);
        header.have_samples = true;
      } else if (key == "index-base") {
        int v = -1;
        if (!(fields >> v) || (v != 0 && v != 1)) {
          throw ParseError(line_no, "index-base must be 0 or 1");
        }
        header.index_base = v;
      } else if (key == "feature") {
        names_seen = true;
        if (!header.have_dim) {
          throw ParseError(line_no, "feature entry before dim");
        }
        long long raw = -1;
        if (!(fields >> raw)) {
          throw ParseError(line_no, "feature entry needs an index");
        }
        std::string name;
        std::getline(fields, name);
        const std::size_t ns = name.find_first_not_of(" \t");
        name = ns == std::string::npos ? "" : name.substr(ns);
        while (!name.empty() && (name.back() == '\r' || name.back() == ' ')) {
          name.pop_back();
        }
        if (name.empty()) {
          throw ParseError(line_no, "feature entry needs a name");
        }
        named.emplace_back(convert_index(raw, header, line_no), name);
      } else {
        throw ParseError(line_no, "unknown header key: " + key);
      }
      continue;
    }

    // Record line: label followed by sorted feature indices.
    if (!header.have_dim || !header.have_samples) {
      throw ParseError(line_no, "records before dim/samples header");
    }
    int label = -1;
    if (!(fields >> label) || (label != 0 && label != 1)) {
      throw ParseError(line_no, "label must be 0 or 1");
    }
    std::vector<std::uint32_t> idx;
    long long raw = 0;
    while (fields >> raw) {
      idx.push_back(convert_index(raw, header, line_no));
    }
    if (!fields.eof()) {
      throw ParseError(line_no, "malformed feature index");
    }
    try {
      samples.emplace_back(std::move(idx), header.dim);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    labels.push_back(label);
    if (samples.size() > header.samples) {
      throw ParseError(line_no, "more records than the declared sample count");
    }
  }

  if (!header.have_dim || !header.have_samples) {
    throw ParseError(line_no, "missing dim/samples header");
  }
  if (header.samples == 0 || samples.empty()) {
    throw ParseError(line_no, "dataset holds no samples");
  }
  if (samples.size() != header.samples) {
    throw ParseError(line_no, "fewer records than the declared sample count");
  }

  std::vector<std::string> names;
  if (!named.empty()) {
    names.assign(header.dim, "");
    for (const auto& [j, name] : named) names[j] = name;
  }
  return LabeledDataset(std::move(samples), std::move(labels), header.dim,
                        std::move(names));
}

LabeledDataset read_dataset_file(const std::string& path) {
  gzFile gz = gzopen(path.c_str(), "rb");
  if (gz == nullptr) {
    throw std::runtime_error("cannot open dataset file: " + path);
  }
  std::string content;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(gz, buf, sizeof buf)) > 0) {
    content.append(buf, static_cast<std::size_t>(got));
  }
  const bool failed = got < 0;
  gzclose(gz);
  if (failed) {
    throw std::runtime_error("failed reading dataset file: " + path);
  }
  std::istringstream in(content);
  return parse_sparse_dataset(in);
}

std::string serialize_dataset(const LabeledDataset& data) {
  std::string out;
  out += "dim " + std::to_string(data.dim()) + "\n";
  out += "samples " + std::to_string(data.size()) + "\n";
  if (data.has_feature_names()) {
    for (std::uint32_t j = 0; j < data.dim(); ++j) {
      const std::string& name = data.feature_names()[j];
      if (!name.empty()) {
        out += "feature " + std::to_string(j) + " " + name + "\n";
      }
    }
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += std::to_string(data.label(i));
    for (auto j : data.sample(i).indices()) {
      out += " " + std::to_string(j);
    }
    out += "\n";
  }
  return out;
}

void write_dataset_file(const std::string& path, const LabeledDataset& data) {
  write_file_atomic(path, serialize_dataset(data));
}

LabeledDataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_per_class == 0) {
    throw std::invalid_argument("need at least one sample per class");
  }
  if (spec.dim == 0) {
    throw std::invalid_argument("dimension must be positive");
  }
  if (spec.noise < 0.0 || spec.noise >= 0.5) {
    throw std::invalid_argument("noise probability must lie in [0, 0.5)");
  }
  for (const auto* block : {&spec.benign_block, &spec.malware_block}) {
    for (auto j : *block) {
      if (j >= spec.dim) {
        throw std::invalid_argument("planted block index out of range");
      }
    }
  }

  std::mt19937_64 rng(spec.rng_seed);
  std::bernoulli_distribution flip(spec.noise);
  std::vector<SparseBinaryVector> samples;
  std::vector<int> labels;
  samples.reserve(2 * spec.n_per_class);
  labels.reserve(2 * spec.n_per_class);

  for (int cls = 0; cls <= 1; ++cls) {
    const auto& block = cls == 0 ? spec.benign_block : spec.malware_block;
    for (std::size_t i = 0; i < spec.n_per_class; ++i) {
      std::vector<bool> bits(spec.dim, false);
      for (auto j : block) bits[j] = true;
      if (spec.noise > 0.0) {
        for (std::uint32_t j = 0; j < spec.dim; ++j) {
          if (flip(rng)) bits[j] = !bits[j];
        }
      }
      samples.push_back(SparseBinaryVector::from_dense(bits));
      labels.push_back(cls);
    }
  }
  return LabeledDataset(std::move(samples), std::move(labels), spec.dim);
}

}  // namespace hamdet
