#pragma once

#include <Eigen/Dense>

namespace lipmr {

// Row-major so a point or pair-difference row is a contiguous span.
using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace lipmr
