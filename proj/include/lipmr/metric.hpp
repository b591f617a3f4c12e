#pragma once

#include <Eigen/Dense>

#include "lipmr/json_util.hpp"
#include "lipmr/types.hpp"

namespace lipmr {

// Symmetric positive semidefinite matrix defining the squared form
// rho(x, y) = (x-y)^T M (x-y). Construction symmetrizes and validates:
// asymmetry beyond 1e-10 * (max|entry| + 1) or a minimum eigenvalue below
// -1e-8 * (max|entry| + 1) is rejected.
class MetricMatrix {
public:
  static MetricMatrix identity(int p);
  static MetricMatrix from_dense(const Eigen::MatrixXd& m);

  const Eigen::MatrixXd& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double min_eigenvalue() const;
  MetricMatrix scaled(double factor) const;

  json to_json(const json& meta = json::object()) const;
  static MetricMatrix from_json(const json& doc);

private:
  explicit MetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// Squared form (x-y)^T M (x-y). Rounding can push tiny negatives below zero:
// raw values in [-1e-10, 0) clamp to 0; anything lower raises NotPsd.
double mahalanobis_distance(const MetricMatrix& metric, Eigen::Ref<const Eigen::VectorXd> x,
                            Eigen::Ref<const Eigen::VectorXd> y);

// Nearest symmetric PSD matrix: symmetrize, eigendecompose, clamp negative
// eigenvalues to zero, rebuild, symmetrize again.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m);

}  // namespace lipmr
