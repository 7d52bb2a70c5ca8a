#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamdet/dataset.hpp"

namespace hamdet {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Text format, one sample per line.
///
///   # comments and blank lines are ignored
///   dim 10
///   samples 10
///   index-base 1              (optional; indices in the file are 1-based)
///   feature 4 SEND_SMS        (optional feature-name table entries)
///   0 2 7 8                   (label, then sorted feature indices)
///
/// `dim` and `samples` must precede the records. Duplicate or
/// out-of-range indices, labels outside {0,1}, and record counts that
/// disagree with the header are rejected with the offending line number.
LabeledDataset parse_sparse_dataset(std::istream& in);

/// Reads a dataset file; gzip-compressed files are decompressed
/// transparently.
LabeledDataset read_dataset_file(const std::string& path);

/// Canonical serialization: 0-based indices, header first, one record
/// per line. parse(serialize(d)) == d.
std::string serialize_dataset(const LabeledDataset& data);

/// Atomic write (temp file + rename) of the canonical serialization.
void write_dataset_file(const std::string& path, const LabeledDataset& data);

/// Planted two-class generator: class-c samples start from the class-c
/// feature block, then every bit is flipped independently with the noise
/// probability. Class 0 samples come first. Deterministic per seed.
struct SyntheticSpec {
  std::size_t n_per_class = 100;
  std::uint32_t dim = 64;
  std::vector<std::uint32_t> benign_block;
  std::vector<std::uint32_t> malware_block;
  double noise = 0.0;  // flip probability, in [0, 0.5)
  std::uint64_t rng_seed = 0;
};

LabeledDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace hamdet
