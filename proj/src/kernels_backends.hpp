#pragma once

#include "lipmr/kernels.hpp"

namespace lipmr::kernels {

PairExtrema pair_extrema_serial(const MatrixRM& points, const Eigen::VectorXi& labels,
                                const Eigen::MatrixXd& metric);
PairExtrema pair_extrema_omp(const MatrixRM& points, const Eigen::VectorXi& labels,
                             const Eigen::MatrixXd& metric);

void row_quadforms_serial(const MatrixRM& diffs, const Eigen::MatrixXd& q, Eigen::VectorXd& out);
void row_quadforms_omp(const MatrixRM& diffs, const Eigen::MatrixXd& q, Eigen::VectorXd& out);

void weighted_outer_sum_serial(const MatrixRM& diffs, const Eigen::VectorXd& w,
                               Eigen::VectorXd& out);
void weighted_outer_sum_omp(const MatrixRM& diffs, const Eigen::VectorXd& w, Eigen::VectorXd& out);

void outer_gram_serial(const MatrixRM& diffs, Eigen::MatrixXd& out);
void outer_gram_omp(const MatrixRM& diffs, Eigen::MatrixXd& out);

double shifted_hinge_sum_serial(const Eigen::VectorXd& v, double t);
double shifted_hinge_sum_omp(const Eigen::VectorXd& v, double t);

double block_sum_serial(const Eigen::VectorXd& v);
double block_sum_omp(const Eigen::VectorXd& v);

double nn_predict_batch_serial(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                               const Eigen::MatrixXd& metric, const MatrixRM& queries,
                               Eigen::VectorXi& out_labels, std::vector<std::uint8_t>& out_ties);
double nn_predict_batch_omp(const MatrixRM& anchors, const Eigen::VectorXi& labels,
                            const Eigen::MatrixXd& metric, const MatrixRM& queries,
                            Eigen::VectorXi& out_labels, std::vector<std::uint8_t>& out_ties);

double extension_values_batch_serial(const MatrixRM& anchors, const Eigen::VectorXd& values,
                                     double lip, double alpha, const Eigen::MatrixXd& metric,
                                     const MatrixRM& queries, Eigen::VectorXd& out);
double extension_values_batch_omp(const MatrixRM& anchors, const Eigen::VectorXd& values,
                                  double lip, double alpha, const Eigen::MatrixXd& metric,
                                  const MatrixRM& queries, Eigen::VectorXd& out);

}  // namespace lipmr::kernels
