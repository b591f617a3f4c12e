#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lipmr/dataset.hpp"
#include "lipmr/json_util.hpp"
#include "lipmr/metric.hpp"
#include "lipmr/types.hpp"

namespace testutil {

using lipmr::LabeledDataset;
using lipmr::MatrixRM;

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
  return std::mt19937_64(lipmr::splitmix64(seed));
}

inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return lo + static_cast<int>(r % span);
}

// Points uniform in [-1, 1]^p, labels random but never single-class.
inline LabeledDataset random_dataset(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng = seeded_rng(seed);
  LabeledDataset data;
  data.x.resize(n, p);
  data.y.resize(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < p; ++c) data.x(r, c) = uniform(rng, -1.0, 1.0);
    data.y[r] = uniform01(rng) < 0.5 ? 1 : -1;
  }
  data.y[0] = 1;
  if (n > 1) data.y[1] = -1;
  return data;
}

// Two clusters centered at +/-2 along every axis, radius 1/2 per coordinate,
// so the classes stay separated under any positive definite metric.
inline LabeledDataset separable_dataset(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng = seeded_rng(seed);
  LabeledDataset data;
  data.x.resize(n, p);
  data.y.resize(n);
  for (int r = 0; r < n; ++r) {
    const int label = r < n / 2 ? 1 : -1;
    data.y[r] = label;
    for (int c = 0; c < p; ++c) data.x(r, c) = 2.0 * label + uniform(rng, -0.5, 0.5);
  }
  data.y[0] = 1;
  data.y[n - 1] = -1;
  return data;
}

// B^T B / p plus a ridge; positive definite for ridge > 0.
inline Eigen::MatrixXd random_psd(int p, std::uint64_t seed, double ridge = 0.05) {
  std::mt19937_64 rng = seeded_rng(seed ^ 0x5d5d5d5dULL);
  Eigen::MatrixXd b(p, p);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) b(r, c) = uniform(rng, -1.0, 1.0);
  }
  Eigen::MatrixXd m = (b.transpose() * b) / p;
  m.diagonal().array() += ridge;
  return m;
}

inline lipmr::MetricMatrix random_metric(int p, std::uint64_t seed, double ridge = 0.05) {
  return lipmr::MetricMatrix::from_dense(random_psd(p, seed, ridge));
}

// Direct O(n^2) enumeration used to cross-check the blocked pair scans.
struct BruteMargin {
  double margin = std::numeric_limits<double>::infinity();
  std::pair<int, int> argmin{-1, -1};
  double diam_all = 0.0;
  std::pair<int, int> argmax_all{-1, -1};
  double diam_pos = 0.0;
  std::pair<int, int> argmax_pos{-1, -1};
  double diam_neg = 0.0;
  std::pair<int, int> argmax_neg{-1, -1};
};

inline BruteMargin brute_margin(const LabeledDataset& data, const lipmr::MetricMatrix& metric) {
  BruteMargin out;
  double max_all = -1.0, max_pos = -1.0, max_neg = -1.0;
  for (int i = 0; i < data.n(); ++i) {
    for (int j = i + 1; j < data.n(); ++j) {
      const double d = lipmr::mahalanobis_distance(metric, data.x.row(i), data.x.row(j));
      if (d > max_all) {
        max_all = d;
        out.argmax_all = {i, j};
      }
      if (data.y[i] != data.y[j]) {
        if (d < out.margin) {
          out.margin = d;
          out.argmin = {i, j};
        }
      } else if (data.y[i] > 0) {
        if (d > max_pos) {
          max_pos = d;
          out.argmax_pos = {i, j};
        }
      } else {
        if (d > max_neg) {
          max_neg = d;
          out.argmax_neg = {i, j};
        }
      }
    }
  }
  out.diam_all = max_all < 0.0 ? 0.0 : max_all;
  out.diam_pos = max_pos < 0.0 ? 0.0 : max_pos;
  out.diam_neg = max_neg < 0.0 ? 0.0 : max_neg;
  return out;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string temp_path(const std::string& hint) {
  std::string tmpl = "/tmp/lipmr_" + hint + "_XXXXXX";
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  const int fd = mkstemp(buf.data());
  if (fd < 0) throw std::runtime_error("mkstemp failed");
  close(fd);
  return std::string(buf.data());
}

inline CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  const std::string out_path = temp_path("out");
  const std::string err_path = temp_path("err");
  const std::string full = cmd + " >" + out_path + " 2>" + err_path;
  const int status = std::system(full.c_str());
  if (status < 0) throw std::runtime_error("system() failed for: " + cmd);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = lipmr::read_text_file(out_path);
  res.err = lipmr::read_text_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

inline std::string cli_path() { return LIPMR_CLI_PATH; }
inline std::string data_dir() { return LIPMR_DATA_DIR; }

}  // namespace testutil
