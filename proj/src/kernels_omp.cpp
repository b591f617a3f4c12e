#include <vector>

#include <omp.h>

#include "kernels_backends.hpp"
#include "kernels_detail.hpp"

// OpenMP backend. Work is partitioned into the same fixed blocks the serial
// backend walks; partials are merged in ascending block order after the
// parallel region, so results are identical for any thread count.
namespace lipmr::kernels {

using namespace detail;

PairExtrema pair_extrema_omp(const MatrixRM& points, const Eigen::VectorXi& labels,
                             const Eigen::MatrixXd& metric) {
  const int n = static_cast<int>(points.rows());
  const int p = static_cast<int>(points.cols());
  const int nblocks = (n + kPairBlock - 1) / kPairBlock;
  std::vector<PairExtrema> parts(static_cast<std::size_t>(nblocks));
#pragma omp parallel
  {
    std::vector<double> buf(static_cast<std::size_t>(p));
#pragma omp for schedule(dynamic)
    for (int b = 0; b < nblocks; ++b) {
      const int i_begin = b * kPairBlock;
      const int i_end = std::min(n, i_begin + kPairBlock);
      extrema_scan_block(points, labels, metric, i_begin, i_end, buf.data(),
                         parts[static_cast<std::size_t>(b)]);
    }
  }
  PairExtrema total;
  for (int b = 0; b < nblocks; ++b) extrema_merge(total, parts[static_cast<std::size_t>(b)]);
  return total;
}

void row_quadforms_omp(const MatrixRM& diffs, const Eigen::MatrixXd& q, Eigen::VectorXd& out) {
  const int n = static_cast<int>(diffs.rows());
  const int p = static_cast<int>(diffs.cols());
  const double* base = diffs.data();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n; ++r) {
    out[r] = quadform(base + static_cast<std::ptrdiff_t>(r) * p, q, p);
  }
}

void weighted_outer_sum_omp(const MatrixRM& diffs, const Eigen::VectorXd& w, Eigen::VectorXd& out) {
  const int p = static_cast<int>(diffs.cols());
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < p * p; ++idx) {
    out[idx] = outer_sum_entry(diffs, w, idx % p, idx / p);
  }
}

void outer_gram_omp(const MatrixRM& diffs, Eigen::MatrixXd& out) {
  const int p = static_cast<int>(diffs.cols());
#pragma omp parallel for schedule(dynamic)
  for (int col = 0; col < p * p; ++col) {
    gram_column(diffs, col % p, col / p, out.col(col).data());
  }
}

double shifted_hinge_sum_omp(const Eigen::VectorXd& v, double t) {
  const int n = static_cast<int>(v.size());
  const int nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> parts(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nblocks; ++b) {
    const int begin = b * kSumBlock;
    parts[static_cast<std::size_t>(b)] =
        hinge_sum_block(v.data(), begin, std::min(n, begin + kSumBlock), t);
  }
  double total = 0.0;
  for (int b = 0; b < nblocks; ++b) total += parts[static_cast<std::size_t>(b)];
  return total;
}

double block_sum_omp(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  const int nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> parts(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nblocks; ++b) {
    const int begin = b * kSumBlock;
    parts[static_cast<std::size_t>(b)] = sum_block(v.data(), begin, std::min(n, begin + kSumBlock));
  }
  double total = 0.0;
  for (int b = 0; b < nblocks; ++b) total += parts[static_cast<std::size_t>(b)];
  return total;
}

double nn_predict_batch_omp(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                            const Eigen::MatrixXd& metric, const MatrixRM& queries,
                            Eigen::VectorXi& out_labels, std::vector<std::uint8_t>& out_ties) {
  const int nq = static_cast<int>(queries.rows());
  const int p = static_cast<int>(queries.cols());
  double min_raw = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    std::vector<double> buf(static_cast<std::size_t>(p));
    double local_min = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static)
    for (int r = 0; r < nq; ++r) {
      const NnScanResult res =
          nn_scan(anchors, labels, metric, queries.data() + static_cast<std::ptrdiff_t>(r) * p,
                  buf.data(), local_min);
      out_labels[r] = res.label;
      out_ties[static_cast<std::size_t>(r)] = res.tie;
    }
#pragma omp critical
    {
      if (local_min < min_raw) min_raw = local_min;
    }
  }
  return min_raw;
}

double extension_values_batch_omp(const MatrixRM& anchors, const Eigen::VectorXd& values,
                                  double lip, double alpha, const Eigen::MatrixXd& metric,
                                  const MatrixRM& queries, Eigen::VectorXd& out) {
  const int nq = static_cast<int>(queries.rows());
  const int p = static_cast<int>(queries.cols());
  double min_raw = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    std::vector<double> buf(static_cast<std::size_t>(p));
    double local_min = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static)
    for (int r = 0; r < nq; ++r) {
      out[r] = extension_scan(anchors, values, lip, alpha, metric,
                              queries.data() + static_cast<std::ptrdiff_t>(r) * p, buf.data(),
                              local_min);
    }
#pragma omp critical
    {
      if (local_min < min_raw) min_raw = local_min;
    }
  }
  return min_raw;
}

}  // namespace lipmr::kernels
