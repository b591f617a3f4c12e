#pragma once

#include <utility>
#include <vector>

#include "lipmr/dataset.hpp"
#include "lipmr/kernels.hpp"
#include "lipmr/metric.hpp"

namespace lipmr {

// Extremal squared distances of a labeled sample under a metric, plus the
// derived margin ratios. All distances are squared forms; diameters over
// classes with fewer than two points are 0 with index pair (-1, -1).
struct MarginReport {
  double margin = 0.0;    // smallest cross-class distance
  double diam_all = 0.0;  // largest pairwise distance
  double diam_pos = 0.0;  // largest distance within the +1 class
  double diam_neg = 0.0;  // largest distance within the -1 class
  double ratio_diam = 0.0;   // margin / diam_all
  double ratio_intra = 0.0;  // margin / (diam_pos + diam_neg)
  double l0 = 0.0;           // 2 / margin, the smallest interpolating Lipschitz constant
  std::pair<int, int> argmin_pair{-1, -1};
  std::pair<int, int> argmax_all{-1, -1};
  std::pair<int, int> argmax_pos{-1, -1};
  std::pair<int, int> argmax_neg{-1, -1};

  json to_json() const;
};

// Both classes must be present (SingleClass otherwise). Ratios with a zero
// denominator are +inf unless the margin is also zero, in which case they
// are 0; l0 is +inf when the margin is 0.
MarginReport margin_report(const LabeledDataset& data, const MetricMatrix& metric,
                           kernels::Backend backend = kernels::default_backend());

// Same quantities on a subset of rows; reported indices refer to the
// original dataset.
MarginReport local_margin_report(const LabeledDataset& data, const std::vector<int>& idx,
                                 const MetricMatrix& metric,
                                 kernels::Backend backend = kernels::default_backend());

// 2 / (smallest cross-class squared distance); +inf when classes touch.
double lipschitz_l0(const LabeledDataset& data, const MetricMatrix& metric,
                    kernels::Backend backend = kernels::default_backend());

}  // namespace lipmr
