#pragma once

#include <cstdint>

#include "lipmr/dataset.hpp"
#include "lipmr/metric.hpp"
#include "lipmr/pairs.hpp"

namespace lipmr {

// Slow, independent solver for the same convex objective the splitting
// scheme minimizes. No vectorized constraint systems: distances come
// straight from the sample. Used to cross-check solver output on small
// instances; refuses anything larger than 40 points or 5 features.
struct OracleConfig {
  double step_size = 0.5;   // scales the 1/sqrt(t) schedule
  int iterations = 20000;   // subgradient steps per restart
  int restarts = 3;         // restart 0 starts from I, later ones randomized
  std::uint64_t seed = 7;
};

// c * (largest diameter-set squared distance) + hinge sum over cross pairs.
double oracle_objective(const LabeledDataset& data, const MetricMatrix& metric, double c,
                        Variant variant);

struct OracleResult {
  MetricMatrix metric = MetricMatrix::identity(1);
  double objective = 0.0;
};

// Projected subgradient descent with best-iterate tracking. The diameter
// term's subgradient uses the lexicographically first maximizing pair; hinge
// terms at their kink contribute zero.
OracleResult oracle_solve(const LabeledDataset& data, double c, Variant variant,
                          const OracleConfig& config = {});

}  // namespace lipmr
