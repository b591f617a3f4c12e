#include "lipmr/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

#include "lipmr/errors.hpp"

namespace lipmr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + token.size();
}

// A finite numeric feature; inf/nan tokens are rejected at load time.
double parse_feature(const std::string& token, int row, int col) {
  double v = 0.0;
  if (!parse_double(token, v) || !std::isfinite(v)) throw UnparsableValue(row, col, token);
  return v;
}

bool looks_like_libsvm(const std::string& text) {
  for (const std::string& raw : split_lines(text)) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string first, second;
    ss >> first;
    if (!(ss >> second)) return false;
    return second.find(':') != std::string::npos;
  }
  return false;
}

// Two distinct raw labels at most. {-1,+1} maps to itself; otherwise the
// smaller raw value becomes +1 and the larger -1. A single distinct value of
// -1 stays -1; any other single value becomes +1.
std::vector<LabelMapEntry> build_label_map(const std::vector<double>& raw_labels) {
  std::vector<double> distinct;
  for (double v : raw_labels) {
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
  }
  std::sort(distinct.begin(), distinct.end());
  if (distinct.size() > 2) {
    std::string what = "found " + std::to_string(distinct.size()) + " distinct values:";
    for (double v : distinct) what += " " + std::to_string(v);
    throw LabelNotBinary(what);
  }
  if (distinct.empty()) throw LabelNotBinary("file has no data rows");
  std::vector<LabelMapEntry> map;
  if (distinct.size() == 1) {
    const double v = distinct[0];
    map.push_back({v, v == -1.0 ? -1 : 1});
    return map;
  }
  if (distinct[0] == -1.0 && distinct[1] == 1.0) {
    map.push_back({-1.0, -1});
    map.push_back({1.0, 1});
  } else {
    map.push_back({distinct[0], 1});
    map.push_back({distinct[1], -1});
  }
  return map;
}

int apply_label_map(const std::vector<LabelMapEntry>& map, double raw) {
  for (const auto& e : map) {
    if (e.raw == raw) return e.mapped;
  }
  throw InternalError("label value missing from its own map");
}

LoadedDataset parse_csv(const std::string& text, const LoadOptions& opts,
                        const std::string& origin) {
  std::vector<std::string> lines = split_lines(text);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  bool saw_header = false;
  for (const std::string& raw : lines) {
    if (trim(raw).empty()) continue;
    std::vector<std::string> fields = split_csv_fields(raw);
    if (opts.has_header && !saw_header) {
      header = fields;
      saw_header = true;
      continue;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw BadDocument(origin + ": no data rows");

  const int width = static_cast<int>(rows[0].size());
  if (width < 2) throw BadDocument(origin + ": rows need at least one feature and a label");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != width)
      throw RaggedRow(static_cast<int>(r), static_cast<int>(rows[r].size()), width);
  }
  if (opts.has_header && static_cast<int>(header.size()) != width)
    throw RaggedRow(-1, static_cast<int>(header.size()), width);

  int label_col = -1;
  if (opts.label_column == "last") {
    label_col = width - 1;
  } else {
    if (opts.has_header) {
      for (int c = 0; c < width; ++c) {
        if (header[static_cast<std::size_t>(c)] == opts.label_column) {
          label_col = c;
          break;
        }
      }
    }
    if (label_col < 0) {
      try {
        std::size_t consumed = 0;
        const int idx = std::stoi(opts.label_column, &consumed);
        if (consumed != opts.label_column.size()) throw std::invalid_argument("trailing");
        label_col = idx;
      } catch (const std::exception&) {
        throw ConfigError("label column '" + opts.label_column + "' is neither a header name" +
                          (opts.has_header ? "" : " (no header row)") + " nor an index");
      }
      if (label_col < 0 || label_col >= width)
        throw ConfigError("label column index " + std::to_string(label_col) +
                          " out of range for " + std::to_string(width) + " columns");
    }
  }

  const int n = static_cast<int>(rows.size());
  const int p = width - 1;
  LoadedDataset out;
  out.data.x.resize(n, p);
  out.data.y.resize(n);
  std::vector<double> raw_labels(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const auto& fields = rows[static_cast<std::size_t>(r)];
    double lv = 0.0;
    if (!parse_double(fields[static_cast<std::size_t>(label_col)], lv) || !std::isfinite(lv))
      throw UnparsableValue(r, label_col, fields[static_cast<std::size_t>(label_col)]);
    raw_labels[static_cast<std::size_t>(r)] = lv;
    int fc = 0;
    for (int c = 0; c < width; ++c) {
      if (c == label_col) continue;
      out.data.x(r, fc) = parse_feature(fields[static_cast<std::size_t>(c)], r, c);
      ++fc;
    }
  }

  out.report.format = DataFormat::csv;
  out.report.label_column = label_col;
  out.report.label_map = build_label_map(raw_labels);
  for (int r = 0; r < n; ++r) {
    out.data.y[r] = apply_label_map(out.report.label_map, raw_labels[static_cast<std::size_t>(r)]);
  }
  for (int c = 0; c < width; ++c) {
    if (c == label_col) continue;
    if (opts.has_header) {
      out.report.feature_names.push_back(header[static_cast<std::size_t>(c)]);
    } else {
      out.report.feature_names.push_back("f" + std::to_string(out.report.feature_names.size()));
    }
  }
  return out;
}

LoadedDataset parse_libsvm(const std::string& text, const std::string& origin) {
  struct SparseRow {
    double label;
    std::vector<std::pair<int, double>> entries;  // 1-based indices
  };
  std::vector<SparseRow> rows;
  int max_index = 0;
  int row_no = 0;
  for (const std::string& raw : split_lines(text)) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string token;
    ss >> token;
    SparseRow row;
    if (!parse_double(token, row.label) || !std::isfinite(row.label))
      throw UnparsableValue(row_no, 0, token);
    int col_no = 1;
    while (ss >> token) {
      const std::size_t colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
        throw UnparsableValue(row_no, col_no, token);
      int idx = 0;
      try {
        std::size_t consumed = 0;
        idx = std::stoi(token.substr(0, colon), &consumed);
        if (consumed != colon) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UnparsableValue(row_no, col_no, token);
      }
      if (idx < 1) throw UnparsableValue(row_no, col_no, token);
      double v = 0.0;
      if (!parse_double(token.substr(colon + 1), v) || !std::isfinite(v))
        throw UnparsableValue(row_no, col_no, token);
      row.entries.emplace_back(idx, v);
      max_index = std::max(max_index, idx);
      ++col_no;
    }
    rows.push_back(std::move(row));
    ++row_no;
  }
  if (rows.empty()) throw BadDocument(origin + ": no data rows");
  if (max_index == 0) throw BadDocument(origin + ": no feature entries in any row");

  const int n = static_cast<int>(rows.size());
  const int p = max_index;
  LoadedDataset out;
  out.data.x = MatrixRM::Zero(n, p);
  out.data.y.resize(n);
  std::vector<double> raw_labels(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    raw_labels[static_cast<std::size_t>(r)] = rows[static_cast<std::size_t>(r)].label;
    for (const auto& [idx, v] : rows[static_cast<std::size_t>(r)].entries) {
      out.data.x(r, idx - 1) = v;
    }
  }
  out.report.format = DataFormat::libsvm;
  out.report.label_column = -1;
  out.report.label_map = build_label_map(raw_labels);
  for (int r = 0; r < n; ++r) {
    out.data.y[r] = apply_label_map(out.report.label_map, raw_labels[static_cast<std::size_t>(r)]);
  }
  for (int c = 0; c < p; ++c) out.report.feature_names.push_back("f" + std::to_string(c));
  return out;
}

}  // namespace

std::vector<int> LabeledDataset::indices_with_label(int label) const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i) {
    if (y[i] == label) out.push_back(i);
  }
  return out;
}

bool LabeledDataset::has_both_classes() const {
  bool pos = false, neg = false;
  for (int i = 0; i < n(); ++i) {
    if (y[i] > 0) {
      pos = true;
    } else {
      neg = true;
    }
  }
  return pos && neg;
}

LoadedDataset parse_dataset(const std::string& text, const LoadOptions& opts,
                            const std::string& origin) {
  std::string format = opts.format;
  if (format == "auto") format = looks_like_libsvm(text) ? "libsvm" : "csv";
  if (format == "libsvm") return parse_libsvm(text, origin);
  if (format == "csv") return parse_csv(text, opts, origin);
  throw ConfigError("unknown data format '" + opts.format + "'");
}

LoadedDataset load_dataset(const std::string& path, const LoadOptions& opts) {
  return parse_dataset(read_text_file(path), opts, path);
}

MatrixRM Standardizer::apply(const MatrixRM& rows) const {
  if (rows.cols() != mean.size())
    throw DimensionMismatch("standardizer fitted on " + std::to_string(mean.size()) +
                            " columns, applied to " + std::to_string(rows.cols()));
  MatrixRM out = rows;
  for (int c = 0; c < out.cols(); ++c) {
    out.col(c) = (out.col(c).array() - mean[c]) / scale[c];
  }
  return out;
}

json Standardizer::to_json() const {
  json j = json::object();
  j["mean"] = std::vector<double>(mean.data(), mean.data() + mean.size());
  j["scale"] = std::vector<double>(scale.data(), scale.data() + scale.size());
  return j;
}

Standardizer Standardizer::from_json(const json& j) {
  Standardizer s;
  const auto mean = require(j, "mean").get<std::vector<double>>();
  const auto scale = require(j, "scale").get<std::vector<double>>();
  if (mean.size() != scale.size()) throw BadDocument("standardizer mean/scale lengths differ");
  s.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
  s.scale =
      Eigen::Map<const Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size()));
  return s;
}

Standardizer fit_standardizer(const MatrixRM& rows) {
  const int n = static_cast<int>(rows.rows());
  const int p = static_cast<int>(rows.cols());
  LIPMR_ASSERT(n > 0, "standardizer needs at least one row");
  Standardizer s;
  s.mean.resize(p);
  s.scale.resize(p);
  for (int c = 0; c < p; ++c) {
    const double mean = rows.col(c).sum() / n;
    double var = 0.0;
    if (n > 1) {
      var = (rows.col(c).array() - mean).square().sum() / (n - 1);
    }
    const double sd = std::sqrt(var);
    s.mean[c] = mean;
    s.scale[c] = sd < 1e-12 ? 1.0 : sd;
  }
  return s;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Uniform draw in [0, bound) by rejection; avoids implementation-defined
// std::uniform_int_distribution behavior.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      (std::numeric_limits<std::uint64_t>::max() % bound);
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % bound;
}

}  // namespace

Split make_split(const LabeledDataset& data, double train_fraction, std::uint64_t seed,
                 int repeat_index) {
  const int n = data.n();
  if (n < 2) throw DegenerateSplit("need at least 2 rows, have " + std::to_string(n));
  if (!(train_fraction > 0.0) || train_fraction > 1.0)
    throw ConfigError("train fraction must lie in (0, 1]");
  const int train_size = static_cast<int>(std::llround(train_fraction * n));
  if (train_size < 1 || train_size >= n)
    throw DegenerateSplit("train size " + std::to_string(train_size) + " of " + std::to_string(n) +
                          " rows leaves no usable test side");

  std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(repeat_index)));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i >= 1; --i) {
      const auto j = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    Split split;
    split.train.assign(perm.begin(), perm.begin() + train_size);
    split.test.assign(perm.begin() + train_size, perm.end());
    bool pos = false, neg = false;
    for (int idx : split.train) {
      if (data.y[idx] > 0) {
        pos = true;
      } else {
        neg = true;
      }
    }
    if (pos && neg) {
      std::sort(split.train.begin(), split.train.end());
      std::sort(split.test.begin(), split.test.end());
      return split;
    }
  }
  throw DegenerateSplit("train side missed a class in 100 resampling attempts");
}

std::vector<Split> make_splits(const LabeledDataset& data, const SplitPlan& plan) {
  if (plan.repeats < 1) throw ConfigError("repeats must be at least 1");
  std::vector<Split> out;
  out.reserve(static_cast<std::size_t>(plan.repeats));
  for (int r = 0; r < plan.repeats; ++r) {
    out.push_back(make_split(data, plan.train_fraction, plan.seed, r));
  }
  return out;
}

LabeledDataset subset(const LabeledDataset& data, const std::vector<int>& idx) {
  LabeledDataset out;
  out.x.resize(static_cast<Eigen::Index>(idx.size()), data.x.cols());
  out.y.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    LIPMR_ASSERT(idx[r] >= 0 && idx[r] < data.n(), "subset index out of range");
    out.x.row(static_cast<Eigen::Index>(r)) = data.x.row(idx[r]);
    out.y[static_cast<Eigen::Index>(r)] = data.y[idx[r]];
  }
  return out;
}

}  // namespace lipmr
