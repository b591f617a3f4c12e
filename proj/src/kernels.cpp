#include "lipmr/kernels.hpp"

#include "kernels_backends.hpp"
#include "lipmr/errors.hpp"

namespace lipmr::kernels {

namespace {
Backend g_default = Backend::parallel;
}

Backend default_backend() { return g_default; }
void set_default_backend(Backend b) { g_default = b; }

PairExtrema pair_extrema(const MatrixRM& points, const Eigen::VectorXi& labels,
                         const Eigen::MatrixXd& metric, Backend backend) {
  LIPMR_ASSERT(points.rows() == labels.size(), "pair_extrema: labels/points size mismatch");
  LIPMR_ASSERT(metric.rows() == points.cols() && metric.cols() == points.cols(),
               "pair_extrema: metric dimension mismatch");
  return backend == Backend::serial ? pair_extrema_serial(points, labels, metric)
                                    : pair_extrema_omp(points, labels, metric);
}

void row_quadforms(const MatrixRM& diffs, const Eigen::MatrixXd& q, Eigen::VectorXd& out,
                   Backend backend) {
  LIPMR_ASSERT(q.rows() == diffs.cols() && q.cols() == diffs.cols(),
               "row_quadforms: matrix dimension mismatch");
  out.resize(diffs.rows());
  if (backend == Backend::serial) {
    row_quadforms_serial(diffs, q, out);
  } else {
    row_quadforms_omp(diffs, q, out);
  }
}

void weighted_outer_sum(const MatrixRM& diffs, const Eigen::VectorXd& w, Eigen::VectorXd& out,
                        Backend backend) {
  LIPMR_ASSERT(w.size() == diffs.rows(), "weighted_outer_sum: weight size mismatch");
  out.resize(diffs.cols() * diffs.cols());
  if (backend == Backend::serial) {
    weighted_outer_sum_serial(diffs, w, out);
  } else {
    weighted_outer_sum_omp(diffs, w, out);
  }
}

void outer_gram(const MatrixRM& diffs, Eigen::MatrixXd& out, Backend backend) {
  const auto pp = diffs.cols() * diffs.cols();
  out.resize(pp, pp);
  if (backend == Backend::serial) {
    outer_gram_serial(diffs, out);
  } else {
    outer_gram_omp(diffs, out);
  }
}

double shifted_hinge_sum(const Eigen::VectorXd& v, double t, Backend backend) {
  return backend == Backend::serial ? shifted_hinge_sum_serial(v, t) : shifted_hinge_sum_omp(v, t);
}

double block_sum(const Eigen::VectorXd& v, Backend backend) {
  return backend == Backend::serial ? block_sum_serial(v) : block_sum_omp(v);
}

double nn_predict_batch(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                        const Eigen::MatrixXd& metric, const MatrixRM& queries,
                        Eigen::VectorXi& out_labels, std::vector<std::uint8_t>& out_ties,
                        Backend backend) {
  LIPMR_ASSERT(anchors.rows() > 0, "nn_predict_batch: no anchors");
  LIPMR_ASSERT(anchors.cols() == queries.cols(), "nn_predict_batch: dimension mismatch");
  LIPMR_ASSERT(labels.size() == anchors.rows(), "nn_predict_batch: label size mismatch");
  out_labels.resize(queries.rows());
  out_ties.assign(static_cast<std::size_t>(queries.rows()), 0);
  return backend == Backend::serial
             ? nn_predict_batch_serial(anchors, labels, metric, queries, out_labels, out_ties)
             : nn_predict_batch_omp(anchors, labels, metric, queries, out_labels, out_ties);
}

double extension_values_batch(const MatrixRM& anchors, const Eigen::VectorXd& values, double lip,
                              double alpha, const Eigen::MatrixXd& metric, const MatrixRM& queries,
                              Eigen::VectorXd& out, Backend backend) {
  LIPMR_ASSERT(anchors.rows() > 0, "extension_values_batch: no anchors");
  LIPMR_ASSERT(anchors.cols() == queries.cols(), "extension_values_batch: dimension mismatch");
  LIPMR_ASSERT(values.size() == anchors.rows(), "extension_values_batch: value size mismatch");
  out.resize(queries.rows());
  return backend == Backend::serial
             ? extension_values_batch_serial(anchors, values, lip, alpha, metric, queries, out)
             : extension_values_batch_omp(anchors, values, lip, alpha, metric, queries, out);
}

}  // namespace lipmr::kernels
