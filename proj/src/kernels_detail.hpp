#pragma once

#include <cstddef>
#include <limits>

#include <Eigen/Dense>

#include "lipmr/kernels.hpp"

// Per-item arithmetic shared by the serial and OpenMP backends. Both backends
// must call these helpers with identical iteration orders; bitwise equality
// of the results depends on it.
namespace lipmr::kernels::detail {

inline constexpr int kSumBlock = 2048;  // rows per reduction block
inline constexpr int kPairBlock = 64;   // i-rows per pair-scan block
inline constexpr double kClampFloor = -1e-10;

inline double clamp_distance(double raw) {
  return (raw < 0.0 && raw >= kClampFloor) ? 0.0 : raw;
}

// d^T Q d accumulated column by column; the order is part of the contract.
inline double quadform(const double* d, const Eigen::MatrixXd& q, int p) {
  const double* qd = q.data();
  double acc = 0.0;
  for (int b = 0; b < p; ++b) {
    const double* col = qd + static_cast<std::ptrdiff_t>(b) * p;
    double s = 0.0;
    for (int a = 0; a < p; ++a) s += d[a] * col[a];
    acc += s * d[b];
  }
  return acc;
}

inline double pair_quadform(const double* x, const double* y, const Eigen::MatrixXd& q, int p,
                            double* buf) {
  for (int a = 0; a < p; ++a) buf[a] = x[a] - y[a];
  return quadform(buf, q, p);
}

// Scans pairs (i, j), i in [i_begin, i_end), j > i, in lexicographic order.
// Strict comparisons keep the first extremum seen, so the block partials
// merged in ascending block order reproduce a full lexicographic scan.
inline void extrema_scan_block(const MatrixRM& points, const Eigen::VectorXi& labels,
                               const Eigen::MatrixXd& metric, int i_begin, int i_end, double* buf,
                               PairExtrema& acc) {
  const int n = static_cast<int>(points.rows());
  const int p = static_cast<int>(points.cols());
  const double* base = points.data();
  for (int i = i_begin; i < i_end; ++i) {
    const double* xi = base + static_cast<std::ptrdiff_t>(i) * p;
    for (int j = i + 1; j < n; ++j) {
      const double* xj = base + static_cast<std::ptrdiff_t>(j) * p;
      const double raw = pair_quadform(xi, xj, metric, p, buf);
      if (raw < acc.min_raw) acc.min_raw = raw;
      const double v = clamp_distance(raw);
      if (labels[i] != labels[j]) {
        if (v < acc.min_cross) {
          acc.min_cross = v;
          acc.min_cross_i = i;
          acc.min_cross_j = j;
        }
      } else if (labels[i] > 0) {
        if (v > acc.max_pos) {
          acc.max_pos = v;
          acc.max_pos_i = i;
          acc.max_pos_j = j;
        }
      } else {
        if (v > acc.max_neg) {
          acc.max_neg = v;
          acc.max_neg_i = i;
          acc.max_neg_j = j;
        }
      }
      if (v > acc.max_all) {
        acc.max_all = v;
        acc.max_all_i = i;
        acc.max_all_j = j;
      }
    }
  }
}

inline void extrema_merge(PairExtrema& into, const PairExtrema& part) {
  if (part.min_raw < into.min_raw) into.min_raw = part.min_raw;
  if (part.min_cross < into.min_cross) {
    into.min_cross = part.min_cross;
    into.min_cross_i = part.min_cross_i;
    into.min_cross_j = part.min_cross_j;
  }
  if (part.max_all > into.max_all) {
    into.max_all = part.max_all;
    into.max_all_i = part.max_all_i;
    into.max_all_j = part.max_all_j;
  }
  if (part.max_pos > into.max_pos) {
    into.max_pos = part.max_pos;
    into.max_pos_i = part.max_pos_i;
    into.max_pos_j = part.max_pos_j;
  }
  if (part.max_neg > into.max_neg) {
    into.max_neg = part.max_neg;
    into.max_neg_i = part.max_neg_i;
    into.max_neg_j = part.max_neg_j;
  }
}

inline double hinge_sum_block(const double* v, int begin, int end, double t) {
  double s = 0.0;
  for (int r = begin; r < end; ++r) {
    const double z = v[r] - t;
    if (z > 0.0) s += z;
  }
  return s;
}

inline double sum_block(const double* v, int begin, int end) {
  double s = 0.0;
  for (int r = begin; r < end; ++r) s += v[r];
  return s;
}

// out[a + b*p] column entry of sum_r w[r] * vec(d_r d_r^T).
inline double outer_sum_entry(const MatrixRM& diffs, const Eigen::VectorXd& w, int a, int b) {
  const int n = static_cast<int>(diffs.rows());
  const int p = static_cast<int>(diffs.cols());
  const double* base = diffs.data();
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    const double* d = base + static_cast<std::ptrdiff_t>(r) * p;
    s += w[r] * d[a] * d[b];
  }
  return s;
}

// One column (index c + e*p) of the p^2 x p^2 Gram matrix; each output entry
// accumulates over rows in ascending order, independent of other columns.
inline void gram_column(const MatrixRM& diffs, int c, int e, double* out_col) {
  const int n = static_cast<int>(diffs.rows());
  const int p = static_cast<int>(diffs.cols());
  const double* base = diffs.data();
  for (int k = 0; k < p * p; ++k) out_col[k] = 0.0;
  for (int r = 0; r < n; ++r) {
    const double* d = base + static_cast<std::ptrdiff_t>(r) * p;
    const double w = d[c] * d[e];
    for (int b = 0; b < p; ++b) {
      const double db = d[b];
      double* seg = out_col + static_cast<std::ptrdiff_t>(b) * p;
      for (int a = 0; a < p; ++a) seg[a] += w * (d[a] * db);
    }
  }
}

struct NnScanResult {
  int label = 0;
  std::uint8_t tie = 0;
};

inline NnScanResult nn_scan(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                            const Eigen::MatrixXd& metric, const double* query, double* buf,
                            double& min_raw) {
  const int n = static_cast<int>(anchors.rows());
  const int p = static_cast<int>(anchors.cols());
  const double* base = anchors.data();
  double best = std::numeric_limits<double>::infinity();
  int best_idx = -1;
  bool tie = false;
  for (int i = 0; i < n; ++i) {
    const double* xi = base + static_cast<std::ptrdiff_t>(i) * p;
    const double raw = pair_quadform(query, xi, metric, p, buf);
    if (raw < min_raw) min_raw = raw;
    const double v = clamp_distance(raw);
    if (v < best) {
      best = v;
      best_idx = i;
      tie = false;
    } else if (v == best && labels[i] != labels[best_idx]) {
      tie = true;
    }
  }
  NnScanResult res;
  res.label = labels[best_idx];
  res.tie = tie ? 1 : 0;
  return res;
}

inline double extension_scan(const MatrixRM& anchors, const Eigen::VectorXd& values, double lip,
                             double alpha, const Eigen::MatrixXd& metric, const double* query,
                             double* buf, double& min_raw) {
  const int n = static_cast<int>(anchors.rows());
  const int p = static_cast<int>(anchors.cols());
  const double* base = anchors.data();
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double* xi = base + static_cast<std::ptrdiff_t>(i) * p;
    const double raw = pair_quadform(query, xi, metric, p, buf);
    if (raw < min_raw) min_raw = raw;
    const double v = clamp_distance(raw);
    const double up = values[i] + lip * v;
    if (up < upper) upper = up;
    const double dn = values[i] - lip * v;
    if (dn > lower) lower = dn;
  }
  return alpha * upper + (1.0 - alpha) * lower;
}

}  // namespace lipmr::kernels::detail
