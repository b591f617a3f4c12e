#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "lipmr/kernels.hpp"
#include "lipmr/metric.hpp"
#include "lipmr/pairs.hpp"

namespace lipmr {

// Consensus splitting for the convex program
//   minimize  c * d + sum_r max(0, 2 - (A1 m)_r)
//   subject to (A2 m)_r <= d for all r,  unvec(m) PSD,
// written with hinge slacks p = 2 - A1 m1, diameter copies q = A2 m2, two
// metric copies m1, m2 tied to a PSD-projected consensus m, and scaled duals
// alpha1..alpha4.
struct SolverConfig {
  double c = 1.0;
  double mu = 1.0;
  int max_iter = 2000;
  double tol = 1e-4;          // threshold for both residuals, in (0, 1e-2]
  double bisect_tol = 1e-10;  // relative bracket width in the q update, in (0, 1e-2]
  int consecutive = 3;       // iterations both residuals must stay below tol
  Variant variant = Variant::lipd;
  kernels::Backend backend = kernels::default_backend();

  void validate() const;
};

struct AdmmState {
  Eigen::VectorXd m, m1, m2;  // p*p vectorized metrics
  Eigen::VectorXd p_slack;    // n1 hinge slacks
  Eigen::VectorXd q_diam;     // n2 diameter surrogates
  Eigen::VectorXd alpha1, alpha2;  // p*p duals for m1 = m, m2 = m
  Eigen::VectorXd alpha3;          // n1 duals for p + A1 m1 = 2
  Eigen::VectorXd alpha4;          // n2 duals for q = A2 m2
};

struct IterStats {
  int iteration = 0;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct SolveReport {
  MetricMatrix metric = MetricMatrix::identity(1);       // final consensus iterate
  MetricMatrix best_metric = MetricMatrix::identity(1);  // lowest-objective iterate
  bool converged = false;
  int iterations = 0;
  double final_objective = 0.0;
  double best_objective = 0.0;
  int best_iteration = 0;
  double d_final = 0.0;          // diameter surrogate max(A2 m) at the final iterate
  double slack_sum_final = 0.0;  // hinge sum at the final iterate
  double imbalance_ratio = 1.0;  // larger class size over smaller
  Variant variant = Variant::lipd;
  std::vector<double> objective_trace;
  std::vector<double> primal_residual_trace;
  std::vector<double> dual_residual_trace;

  json to_json(const SolverConfig& config) const;
};

// Piecewise soft shrinkage used by the hinge-slack update: omega - lambda
// above lambda, 0 on [0, lambda], omega below 0.
double admm_soft_threshold(double omega, double lambda);

// Root of sum_r max(0, v_r - t) = budget (budget > 0), found by bisection on
// the bracket [min(v) - budget - 1, max(v)] down to a relative width, using
// fixed-block sums so the result is thread-count independent.
double admm_q_threshold(const Eigen::VectorXd& v, double budget, double rel_tol,
                        kernels::Backend backend);

// Factorizations and cached products for one pair system. The Gram matrices
// A^T A + I are formed once and Cholesky-factored; per-iteration solves reuse
// the factors. Updates follow the order p, q, m1, m2, m, duals; each uses the
// freshest values of its inputs.
class AdmmWorkspace {
public:
  AdmmWorkspace(const PairSystem& pairs, const SolverConfig& config);

  AdmmState init_state();

  // Recomputes the cached products A1 m1 and A2 m2 from the given state; call
  // after setting state fields by hand.
  void refresh_products(const AdmmState& state);

  void update_p(AdmmState& state);
  void update_q(AdmmState& state);
  void update_m1(AdmmState& state);
  void update_m2(AdmmState& state);
  void update_m(AdmmState& state);
  void update_duals(AdmmState& state);

  // One full pass in update order; returns residuals and the objective at
  // the new consensus iterate.
  IterStats step(AdmmState& state, int iteration);

  double objective_at(const Eigen::VectorXd& m_vec) const;
  double primal_residual(const AdmmState& state) const;

  const Eigen::VectorXd& a1m1() const { return a1m1_; }
  const Eigen::VectorXd& a2m2() const { return a2m2_; }
  const PairSystem& pairs() const { return pairs_; }

private:
  const PairSystem& pairs_;
  SolverConfig config_;
  Eigen::LLT<Eigen::MatrixXd> fact1_, fact2_;  // of A^T A + I
  Eigen::VectorXd a1m1_, a2m2_;
  Eigen::VectorXd prev_m_;
};

using SolveObserver = std::function<void(const AdmmState&, const IterStats&)>;

// Runs the splitting scheme on the given sample. Init: m = m1 = m2 = vec(I),
// p = 2 - A1 m1, q = A2 m2, duals zero. Converged means both residuals
// stayed below tol for `consecutive` iterations; otherwise the report says
// so and callers decide whether a non-converged metric is acceptable.
SolveReport solve_metric(const LabeledDataset& data, const SolverConfig& config,
                         const SolveObserver& observer = nullptr);

}  // namespace lipmr
