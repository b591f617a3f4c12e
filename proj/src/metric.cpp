#include "lipmr/metric.hpp"

#include <cmath>

#include "kernels_detail.hpp"
#include "lipmr/errors.hpp"

namespace lipmr {

MetricMatrix MetricMatrix::identity(int p) {
  LIPMR_ASSERT(p >= 1, "metric dimension must be positive");
  return MetricMatrix(Eigen::MatrixXd::Identity(p, p));
}

MetricMatrix MetricMatrix::from_dense(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionMismatch("metric must be square and nonempty, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (!m.allFinite()) throw NotPsd("matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff() + 1.0;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw NotPsd("asymmetry " + std::to_string(asym) + " exceeds tolerance");
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw FactorizationFailure("eigendecomposition failed");
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-8 * scale)
    throw NotPsd("minimum eigenvalue " + std::to_string(min_eig));
  return MetricMatrix(std::move(sym));
}

double MetricMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw FactorizationFailure("eigendecomposition failed");
  return es.eigenvalues().minCoeff();
}

MetricMatrix MetricMatrix::scaled(double factor) const {
  LIPMR_ASSERT(factor >= 0.0, "metric scale factor must be nonnegative");
  return MetricMatrix(factor * m_);
}

json MetricMatrix::to_json(const json& meta) const {
  json doc = json::object();
  doc["p"] = dim();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(dim()) * static_cast<std::size_t>(dim()));
  for (int r = 0; r < dim(); ++r) {
    for (int c = 0; c < dim(); ++c) flat.push_back(m_(r, c));
  }
  doc["m"] = flat;
  doc["meta"] = meta;
  return doc;
}

MetricMatrix MetricMatrix::from_json(const json& doc) {
  const int p = get_int(doc, "p");
  if (p < 1) throw BadDocument("metric dimension must be positive");
  const json& arr = require(doc, "m");
  if (!arr.is_array() || static_cast<int>(arr.size()) != p * p)
    throw BadDocument("metric entry array must hold p*p numbers");
  Eigen::MatrixXd m(p, p);
  int k = 0;
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) {
      const json& v = arr[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw BadDocument("metric entries must be numbers");
      m(r, c) = v.get<double>();
      ++k;
    }
  }
  return from_dense(m);
}

double mahalanobis_distance(const MetricMatrix& metric, Eigen::Ref<const Eigen::VectorXd> x,
                            Eigen::Ref<const Eigen::VectorXd> y) {
  if (x.size() != y.size() || x.size() != metric.dim())
    throw DimensionMismatch("distance between " + std::to_string(x.size()) + "- and " +
                            std::to_string(y.size()) + "-vectors under a " +
                            std::to_string(metric.dim()) + "-dim metric");
  Eigen::VectorXd d = x - y;
  const double raw = kernels::detail::quadform(d.data(), metric.mat(), metric.dim());
  if (raw < kernels::detail::kClampFloor)
    throw NotPsd("squared distance " + std::to_string(raw) + " is negative");
  return kernels::detail::clamp_distance(raw);
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m) {
  LIPMR_ASSERT(m.rows() == m.cols(), "psd_project needs a square matrix");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw FactorizationFailure("eigendecomposition failed");
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd rebuilt =
      es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (rebuilt + rebuilt.transpose());
}

}  // namespace lipmr
