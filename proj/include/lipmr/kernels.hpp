#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "lipmr/types.hpp"

// Numeric hot loops, each with a serial reference implementation and an
// OpenMP implementation. Both backends produce bitwise-identical results for
// any thread count: reductions accumulate in fixed-size blocks merged in
// ascending block order, and extremum scans break ties toward the
// lexicographically smallest index pair.
namespace lipmr::kernels {

enum class Backend { serial, parallel };

Backend default_backend();
void set_default_backend(Backend b);

// Extremal squared distances over unordered point pairs (i < j), classified
// by label sign. Values are clamped like metric distances: raw quadratic
// forms in [-1e-10, 0) count as 0; min_raw reports the smallest raw value so
// callers can reject indefinite matrices. Index pairs with value -1 mark an
// extremum whose pair class is empty.
struct PairExtrema {
  double min_cross = std::numeric_limits<double>::infinity();
  int min_cross_i = -1, min_cross_j = -1;
  double max_all = -std::numeric_limits<double>::infinity();
  int max_all_i = -1, max_all_j = -1;
  double max_pos = -std::numeric_limits<double>::infinity();
  int max_pos_i = -1, max_pos_j = -1;
  double max_neg = -std::numeric_limits<double>::infinity();
  int max_neg_i = -1, max_neg_j = -1;
  double min_raw = std::numeric_limits<double>::infinity();
};

PairExtrema pair_extrema(const MatrixRM& points, const Eigen::VectorXi& labels,
                         const Eigen::MatrixXd& metric, Backend backend);

// out[r] = d_r^T Q d_r for each row d_r of diffs.
void row_quadforms(const MatrixRM& diffs, const Eigen::MatrixXd& q, Eigen::VectorXd& out,
                   Backend backend);

// out[a + b*p] = sum_r w[r] * d_r[a] * d_r[b]; the column-stacked p*p vector
// sum_r w[r] * vec(d_r d_r^T).
void weighted_outer_sum(const MatrixRM& diffs, const Eigen::VectorXd& w, Eigen::VectorXd& out,
                        Backend backend);

// out = sum_r vec(d_r d_r^T) vec(d_r d_r^T)^T, the p^2 x p^2 Gram matrix of
// the implicit constraint rows.
void outer_gram(const MatrixRM& diffs, Eigen::MatrixXd& out, Backend backend);

// sum_r max(0, v[r] - t).
double shifted_hinge_sum(const Eigen::VectorXd& v, double t, Backend backend);

double block_sum(const Eigen::VectorXd& v, Backend backend);

// 1-NN label per query row under the given metric, nearest anchor by clamped
// squared distance, ties toward the lowest anchor index. out_ties[r] is 1
// when the winning distance is also attained by an anchor of the opposite
// label. Returns the smallest raw quadratic form seen.
double nn_predict_batch(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                        const Eigen::MatrixXd& metric, const MatrixRM& queries,
                        Eigen::VectorXi& out_labels, std::vector<std::uint8_t>& out_ties,
                        Backend backend);

// Interpolated envelope value per query row:
//   alpha * min_i(a[i] + lip*rho(x, x_i)) + (1-alpha) * max_i(a[i] - lip*rho(x, x_i)).
// Returns the smallest raw quadratic form seen.
double extension_values_batch(const MatrixRM& anchors, const Eigen::VectorXd& values, double lip,
                              double alpha, const Eigen::MatrixXd& metric, const MatrixRM& queries,
                              Eigen::VectorXd& out, Backend backend);

}  // namespace lipmr::kernels
