#pragma once

#include <optional>
#include <vector>

#include "lipmr/dataset.hpp"
#include "lipmr/kernels.hpp"
#include "lipmr/metric.hpp"

namespace lipmr {

// Interpolating classifier built from anchor points with values in {-1, +1}.
// The decision value at x blends the two extremal Lipschitz envelopes:
//   alpha * min_i(a_i + L*rho(x, x_i)) + (1-alpha) * max_i(a_i - L*rho(x, x_i)).
// Queries pass through the stored standardizer (if any) before distances;
// anchors are stored already transformed.
struct LipschitzModel {
  MatrixRM anchors;
  Eigen::VectorXd anchor_values;
  double lip_constant = 1.0;
  double alpha = 0.5;
  MetricMatrix metric = MetricMatrix::identity(1);
  std::optional<Standardizer> standardizer;

  Eigen::VectorXi anchor_labels() const;  // sign of anchor_values
  void validate() const;

  json to_json() const;
  static LipschitzModel from_json(const json& doc);
};

// Builds a model whose anchors are the (transformed) training rows. The
// default constant is 2/margin, the smallest value that interpolates the
// labels; when the margin is zero no finite constant interpolates and the
// default falls back to 1. At alpha = 1/2 the blended envelope's sign at any
// query equals the nearest-anchor label for every positive constant, so the
// fallback leaves predictions unchanged.
LipschitzModel build_model(const LabeledDataset& data, const MetricMatrix& metric,
                           std::optional<double> lip = std::nullopt, double alpha = 0.5,
                           std::optional<Standardizer> standardizer = std::nullopt,
                           kernels::Backend backend = kernels::default_backend());

struct Prediction {
  int label = 0;  // -1 or +1
  bool tie = false;
};

// Blended envelope values at each query row (standardizer applied).
Eigen::VectorXd extension_values(const LipschitzModel& model, const MatrixRM& queries,
                                 kernels::Backend backend = kernels::default_backend());
double extension_value(const LipschitzModel& model, Eigen::Ref<const Eigen::VectorXd> x);

// Sign of the blended envelope; an exact 0 maps to +1 with the tie flag set.
std::vector<Prediction> predict_extension(const LipschitzModel& model, const MatrixRM& queries,
                                          kernels::Backend backend = kernels::default_backend());

// Nearest-anchor label under the model metric, ties toward the lowest anchor
// index; the tie flag marks queries whose nearest distance is attained by
// both labels.
std::vector<Prediction> predict_nn(const LipschitzModel& model, const MatrixRM& queries,
                                   kernels::Backend backend = kernels::default_backend());

// Fraction of predictions whose label differs from truth.
double empirical_risk(const std::vector<Prediction>& preds, const Eigen::VectorXi& truth);

}  // namespace lipmr
