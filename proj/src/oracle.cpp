#include "lipmr/oracle.hpp"

#include <cmath>
#include <random>

#include "lipmr/errors.hpp"

namespace lipmr {

namespace {

struct PairList {
  std::vector<std::pair<int, int>> cross;
  std::vector<std::pair<int, int>> diam;
};

PairList enumerate_pairs(const LabeledDataset& data, Variant variant) {
  PairList out;
  for (int i = 0; i < data.n(); ++i) {
    for (int j = i + 1; j < data.n(); ++j) {
      if (data.y[i] != data.y[j]) {
        out.cross.emplace_back(i, j);
      }
      if (variant == Variant::lipd || data.y[i] == data.y[j]) {
        out.diam.emplace_back(i, j);
      }
    }
  }
  if (out.cross.empty()) throw SingleClass("no cross-class pairs");
  if (out.diam.empty()) throw NoSameLabelPairs();
  return out;
}

double pair_distance(const LabeledDataset& data, const MetricMatrix& metric, int i, int j) {
  return mahalanobis_distance(metric, data.x.row(i).transpose(), data.x.row(j).transpose());
}

double objective_on(const LabeledDataset& data, const MetricMatrix& metric, double c,
                    const PairList& pairs) {
  double d = -std::numeric_limits<double>::infinity();
  for (const auto& [i, j] : pairs.diam) {
    const double rho = pair_distance(data, metric, i, j);
    if (rho > d) d = rho;
  }
  double hinge = 0.0;
  for (const auto& [i, j] : pairs.cross) {
    const double rho = pair_distance(data, metric, i, j);
    if (rho < 2.0) hinge += 2.0 - rho;
  }
  return c * d + hinge;
}

Eigen::MatrixXd outer_of_pair(const LabeledDataset& data, int i, int j) {
  const Eigen::VectorXd d = (data.x.row(i) - data.x.row(j)).transpose();
  return d * d.transpose();
}

// Subgradient of the objective at a PSD iterate. The max term differentiates
// through its lexicographically first maximizer; hinges exactly at 2
// contribute nothing.
Eigen::MatrixXd subgradient_at(const LabeledDataset& data, const MetricMatrix& metric, double c,
                               const PairList& pairs) {
  double d = -std::numeric_limits<double>::infinity();
  std::pair<int, int> argmax{-1, -1};
  for (const auto& pr : pairs.diam) {
    const double rho = pair_distance(data, metric, pr.first, pr.second);
    if (rho > d) {
      d = rho;
      argmax = pr;
    }
  }
  Eigen::MatrixXd g = c * outer_of_pair(data, argmax.first, argmax.second);
  for (const auto& [i, j] : pairs.cross) {
    const double rho = pair_distance(data, metric, i, j);
    if (rho < 2.0) g -= outer_of_pair(data, i, j);
  }
  return g;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

MetricMatrix random_start(int p, std::mt19937_64& rng) {
  Eigen::MatrixXd b(p, p);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) b(r, c) = 2.0 * uniform01(rng) - 1.0;
  }
  const Eigen::MatrixXd m = b.transpose() * b / p + 0.1 * Eigen::MatrixXd::Identity(p, p);
  return MetricMatrix::from_dense(m);
}

}  // namespace

double oracle_objective(const LabeledDataset& data, const MetricMatrix& metric, double c,
                        Variant variant) {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  return objective_on(data, metric, c, enumerate_pairs(data, variant));
}

OracleResult oracle_solve(const LabeledDataset& data, double c, Variant variant,
                          const OracleConfig& config) {
  if (data.n() > 40 || data.dim() > 5)
    throw InstanceTooLarge(std::to_string(data.n()) + " points, " + std::to_string(data.dim()) +
                           " features (caps: 40 points, 5 features)");
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (config.iterations < 1 || config.restarts < 1)
    throw ConfigError("oracle needs at least one iteration and one restart");
  const PairList pairs = enumerate_pairs(data, variant);
  const int p = data.dim();

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::mt19937_64 rng(splitmix64(config.seed ^ static_cast<std::uint64_t>(restart)));
    MetricMatrix m = restart == 0 ? MetricMatrix::identity(p) : random_start(p, rng);
    double obj = objective_on(data, m, c, pairs);
    if (obj < best.objective) {
      best.objective = obj;
      best.metric = m;
    }
    for (int t = 1; t <= config.iterations; ++t) {
      const Eigen::MatrixXd g = subgradient_at(data, m, c, pairs);
      const double step = config.step_size / std::sqrt(static_cast<double>(t));
      m = MetricMatrix::from_dense(psd_project(m.mat() - step * g));
      obj = objective_on(data, m, c, pairs);
      if (obj < best.objective) {
        best.objective = obj;
        best.metric = m;
      }
    }
  }
  return best;
}

}  // namespace lipmr
