#include <vector>

#include "kernels_backends.hpp"
#include "kernels_detail.hpp"

// Reference implementations. These walk the same fixed blocks as the OpenMP
// backend and merge partials in the same order, so the two backends agree
// bitwise.
namespace lipmr::kernels {

using namespace detail;

PairExtrema pair_extrema_serial(const MatrixRM& points, const Eigen::VectorXi& labels,
                                const Eigen::MatrixXd& metric) {
  const int n = static_cast<int>(points.rows());
  const int p = static_cast<int>(points.cols());
  std::vector<double> buf(static_cast<std::size_t>(p));
  PairExtrema total;
  for (int i_begin = 0; i_begin < n; i_begin += kPairBlock) {
    const int i_end = std::min(n, i_begin + kPairBlock);
    PairExtrema part;
    extrema_scan_block(points, labels, metric, i_begin, i_end, buf.data(), part);
    extrema_merge(total, part);
  }
  return total;
}

void row_quadforms_serial(const MatrixRM& diffs, const Eigen::MatrixXd& q, Eigen::VectorXd& out) {
  const int n = static_cast<int>(diffs.rows());
  const int p = static_cast<int>(diffs.cols());
  const double* base = diffs.data();
  for (int r = 0; r < n; ++r) {
    out[r] = quadform(base + static_cast<std::ptrdiff_t>(r) * p, q, p);
  }
}

void weighted_outer_sum_serial(const MatrixRM& diffs, const Eigen::VectorXd& w,
                               Eigen::VectorXd& out) {
  const int p = static_cast<int>(diffs.cols());
  for (int idx = 0; idx < p * p; ++idx) {
    out[idx] = outer_sum_entry(diffs, w, idx % p, idx / p);
  }
}

void outer_gram_serial(const MatrixRM& diffs, Eigen::MatrixXd& out) {
  const int p = static_cast<int>(diffs.cols());
  for (int col = 0; col < p * p; ++col) {
    gram_column(diffs, col % p, col / p, out.col(col).data());
  }
}

double shifted_hinge_sum_serial(const Eigen::VectorXd& v, double t) {
  const int n = static_cast<int>(v.size());
  double total = 0.0;
  for (int begin = 0; begin < n; begin += kSumBlock) {
    total += hinge_sum_block(v.data(), begin, std::min(n, begin + kSumBlock), t);
  }
  return total;
}

double block_sum_serial(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  double total = 0.0;
  for (int begin = 0; begin < n; begin += kSumBlock) {
    total += sum_block(v.data(), begin, std::min(n, begin + kSumBlock));
  }
  return total;
}

double nn_predict_batch_serial(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                               const Eigen::MatrixXd& metric, const MatrixRM& queries,
                               Eigen::VectorXi& out_labels, std::vector<std::uint8_t>& out_ties) {
  const int nq = static_cast<int>(queries.rows());
  const int p = static_cast<int>(queries.cols());
  std::vector<double> buf(static_cast<std::size_t>(p));
  double min_raw = std::numeric_limits<double>::infinity();
  for (int r = 0; r < nq; ++r) {
    const NnScanResult res =
        nn_scan(anchors, labels, metric, queries.data() + static_cast<std::ptrdiff_t>(r) * p,
                buf.data(), min_raw);
    out_labels[r] = res.label;
    out_ties[static_cast<std::size_t>(r)] = res.tie;
  }
  return min_raw;
}

double extension_values_batch_serial(const MatrixRM& anchors, const Eigen::VectorXd& values,
                                     double lip, double alpha, const Eigen::MatrixXd& metric,
                                     const MatrixRM& queries, Eigen::VectorXd& out) {
  const int nq = static_cast<int>(queries.rows());
  const int p = static_cast<int>(queries.cols());
  std::vector<double> buf(static_cast<std::size_t>(p));
  double min_raw = std::numeric_limits<double>::infinity();
  for (int r = 0; r < nq; ++r) {
    out[r] = extension_scan(anchors, values, lip, alpha, metric,
                            queries.data() + static_cast<std::ptrdiff_t>(r) * p, buf.data(),
                            min_raw);
  }
  return min_raw;
}

}  // namespace lipmr::kernels
