#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lipmr/json_util.hpp"
#include "lipmr/types.hpp"

namespace lipmr {

struct LabeledDataset {
  MatrixRM x;         // n rows of p features
  Eigen::VectorXi y;  // entries in {-1, +1}

  int n() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }
  std::vector<int> indices_with_label(int label) const;
  bool has_both_classes() const;
};

enum class DataFormat { csv, libsvm };

struct LabelMapEntry {
  double raw;
  int mapped;
};

struct LoadReport {
  DataFormat format = DataFormat::csv;
  std::vector<std::string> feature_names;
  std::vector<LabelMapEntry> label_map;  // ascending by raw value
  int label_column = -1;                 // resolved CSV column; -1 for libsvm
};

struct LoadedDataset {
  LabeledDataset data;
  LoadReport report;
};

struct LoadOptions {
  std::string format = "auto";        // "csv", "libsvm", or "auto"
  bool has_header = false;            // csv only
  std::string label_column = "last";  // csv only: "last", a 0-based index, or a header name
};

// Reads a file and parses it. Format detection ("auto") looks at the first
// non-blank line: a second token shaped like idx:val means libsvm.
LoadedDataset load_dataset(const std::string& path, const LoadOptions& opts = {});

// Same parser on an in-memory string; origin only labels error messages.
LoadedDataset parse_dataset(const std::string& text, const LoadOptions& opts,
                            const std::string& origin);

// Column-wise affine transform fitted on training rows: subtract the mean,
// divide by the sample standard deviation (n-1 denominator). Columns with
// sd below 1e-12 keep divisor 1 so constant features pass through.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  MatrixRM apply(const MatrixRM& rows) const;
  json to_json() const;
  static Standardizer from_json(const json& j);
};

Standardizer fit_standardizer(const MatrixRM& rows);

struct SplitPlan {
  double train_fraction = 0.6;
  int repeats = 1;
  std::uint64_t seed = 0;
};

struct Split {
  std::vector<int> train;  // sorted ascending
  std::vector<int> test;   // sorted ascending
};

// Shuffles indices with a Fisher-Yates pass driven by mt19937_64 seeded with
// splitmix64(seed ^ repeat_index); uniform draws use rejection sampling so the
// sequence is identical across standard library implementations. The train
// side takes round(train_fraction * n) indices (half away from zero) and must
// contain both classes; up to 100 fresh permutations are tried before
// DegenerateSplit.
Split make_split(const LabeledDataset& data, double train_fraction, std::uint64_t seed,
                 int repeat_index);
std::vector<Split> make_splits(const LabeledDataset& data, const SplitPlan& plan);

LabeledDataset subset(const LabeledDataset& data, const std::vector<int>& idx);

std::uint64_t splitmix64(std::uint64_t z);

}  // namespace lipmr
