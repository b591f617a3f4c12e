#include "lipmr/admm.hpp"

#include <algorithm>
#include <cmath>

#include "lipmr/errors.hpp"

namespace lipmr {

void SolverConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("c must be a positive real");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be a positive real");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(tol > 0.0) || tol > 1e-2)
    throw ConfigError("tol must lie in (0, 1e-2]");
  if (!(bisect_tol > 0.0) || bisect_tol > 1e-2)
    throw ConfigError("bisect_tol must lie in (0, 1e-2]");
  if (consecutive < 1) throw ConfigError("consecutive must be at least 1");
}

double admm_soft_threshold(double omega, double lambda) {
  if (omega > lambda) return omega - lambda;
  if (omega < 0.0) return omega;
  return 0.0;
}

double admm_q_threshold(const Eigen::VectorXd& v, double budget, double rel_tol,
                        kernels::Backend backend) {
  LIPMR_ASSERT(v.size() > 0, "q threshold needs a nonempty vector");
  LIPMR_ASSERT(budget > 0.0, "q threshold budget must be positive");
  double lo = v.minCoeff() - budget - 1.0;
  double hi = v.maxCoeff();
  // g(lo) = sum(v - lo) >= n*(budget+1) > budget and g(hi) = 0 < budget, so
  // the root sits inside; g is continuous and nonincreasing.
  while (hi - lo > rel_tol * std::max({1.0, std::abs(hi), std::abs(lo)})) {
    const double mid = 0.5 * (lo + hi);
    const double g = kernels::shifted_hinge_sum(v, mid, backend);
    if (g > budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int p) {
  LIPMR_ASSERT(v.size() == p * p, "unvec size mismatch");
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), p, p);
}

struct ObjectiveParts {
  double d = 0.0;
  double slack_sum = 0.0;
  double value = 0.0;
};

ObjectiveParts objective_parts(const PairSystem& pairs, const Eigen::VectorXd& m_vec, double c,
                               kernels::Backend backend) {
  const Eigen::MatrixXd q = unvec(m_vec, pairs.p);
  Eigen::VectorXd cross, diam;
  kernels::row_quadforms(pairs.diffs1, q, cross, backend);
  kernels::row_quadforms(pairs.diffs2, q, diam, backend);
  ObjectiveParts parts;
  parts.d = diam.maxCoeff();
  const Eigen::VectorXd neg_cross = -cross;
  parts.slack_sum = kernels::shifted_hinge_sum(neg_cross, -2.0, backend);
  parts.value = c * parts.d + parts.slack_sum;
  return parts;
}

}  // namespace

AdmmWorkspace::AdmmWorkspace(const PairSystem& pairs, const SolverConfig& config)
    : pairs_(pairs), config_(config) {
  config_.validate();
  Eigen::MatrixXd gram;
  kernels::outer_gram(pairs_.diffs1, gram, config_.backend);
  gram.diagonal().array() += 1.0;
  fact1_.compute(gram);
  if (fact1_.info() != Eigen::Success)
    throw FactorizationFailure("Cholesky of the cross-pair normal matrix failed");
  kernels::outer_gram(pairs_.diffs2, gram, config_.backend);
  gram.diagonal().array() += 1.0;
  fact2_.compute(gram);
  if (fact2_.info() != Eigen::Success)
    throw FactorizationFailure("Cholesky of the diameter-pair normal matrix failed");
}

AdmmState AdmmWorkspace::init_state() {
  const int pp = pairs_.pp();
  AdmmState st;
  st.m = Eigen::VectorXd::Zero(pp);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(pairs_.p, pairs_.p);
  st.m = Eigen::Map<const Eigen::VectorXd>(eye.data(), pp);
  st.m1 = st.m;
  st.m2 = st.m;
  refresh_products(st);
  st.p_slack = (2.0 - a1m1_.array()).matrix();
  st.q_diam = a2m2_;
  st.alpha1 = Eigen::VectorXd::Zero(pp);
  st.alpha2 = Eigen::VectorXd::Zero(pp);
  st.alpha3 = Eigen::VectorXd::Zero(pairs_.n1());
  st.alpha4 = Eigen::VectorXd::Zero(pairs_.n2());
  prev_m_ = st.m;
  return st;
}

void AdmmWorkspace::refresh_products(const AdmmState& state) {
  kernels::row_quadforms(pairs_.diffs1, unvec(state.m1, pairs_.p), a1m1_, config_.backend);
  kernels::row_quadforms(pairs_.diffs2, unvec(state.m2, pairs_.p), a2m2_, config_.backend);
  prev_m_ = state.m;
}

void AdmmWorkspace::update_p(AdmmState& state) {
  const double inv_mu = 1.0 / config_.mu;
  for (int r = 0; r < pairs_.n1(); ++r) {
    const double omega = 2.0 - a1m1_[r] - state.alpha3[r] * inv_mu;
    state.p_slack[r] = admm_soft_threshold(omega, inv_mu);
  }
}

void AdmmWorkspace::update_q(AdmmState& state) {
  const Eigen::VectorXd v = a2m2_ - state.alpha4 / config_.mu;
  const double t =
      admm_q_threshold(v, config_.c / config_.mu, config_.bisect_tol, config_.backend);
  state.q_diam = v.cwiseMin(t);
}

void AdmmWorkspace::update_m1(AdmmState& state) {
  const double mu = config_.mu;
  const Eigen::VectorXd w =
      state.alpha3 + mu * state.p_slack - Eigen::VectorXd::Constant(pairs_.n1(), 2.0 * mu);
  Eigen::VectorXd atw;
  kernels::weighted_outer_sum(pairs_.diffs1, w, atw, config_.backend);
  const Eigen::VectorXd rhs = state.m - (state.alpha1 + atw) / mu;
  state.m1 = fact1_.solve(rhs);
  kernels::row_quadforms(pairs_.diffs1, unvec(state.m1, pairs_.p), a1m1_, config_.backend);
}

void AdmmWorkspace::update_m2(AdmmState& state) {
  const double mu = config_.mu;
  const Eigen::VectorXd w = state.alpha4 + mu * state.q_diam;
  Eigen::VectorXd atw;
  kernels::weighted_outer_sum(pairs_.diffs2, w, atw, config_.backend);
  const Eigen::VectorXd rhs = state.m + (atw - state.alpha2) / mu;
  state.m2 = fact2_.solve(rhs);
  kernels::row_quadforms(pairs_.diffs2, unvec(state.m2, pairs_.p), a2m2_, config_.backend);
}

void AdmmWorkspace::update_m(AdmmState& state) {
  prev_m_ = state.m;
  const Eigen::VectorXd v =
      0.5 * (state.m1 + state.m2) + (state.alpha1 + state.alpha2) / (2.0 * config_.mu);
  const Eigen::MatrixXd projected = psd_project(unvec(v, pairs_.p));
  state.m = Eigen::Map<const Eigen::VectorXd>(projected.data(), pairs_.pp());
}

void AdmmWorkspace::update_duals(AdmmState& state) {
  const double mu = config_.mu;
  state.alpha1 += mu * (state.m1 - state.m);
  state.alpha2 += mu * (state.m2 - state.m);
  state.alpha3 += mu * (state.p_slack + a1m1_ - Eigen::VectorXd::Constant(pairs_.n1(), 2.0));
  state.alpha4 += mu * (state.q_diam - a2m2_);
}

double AdmmWorkspace::objective_at(const Eigen::VectorXd& m_vec) const {
  return objective_parts(pairs_, m_vec, config_.c, config_.backend).value;
}

double AdmmWorkspace::primal_residual(const AdmmState& state) const {
  const double r_hinge = (state.p_slack + a1m1_ - Eigen::VectorXd::Constant(pairs_.n1(), 2.0))
                             .cwiseAbs()
                             .maxCoeff() /
                         std::sqrt(static_cast<double>(pairs_.n1()));
  const double r_diam =
      (state.q_diam - a2m2_).cwiseAbs().maxCoeff() / std::sqrt(static_cast<double>(pairs_.n2()));
  const double r_m1 = (state.m1 - state.m).cwiseAbs().maxCoeff();
  const double r_m2 = (state.m2 - state.m).cwiseAbs().maxCoeff();
  return std::max({r_hinge, r_diam, r_m1, r_m2});
}

IterStats AdmmWorkspace::step(AdmmState& state, int iteration) {
  update_p(state);
  update_q(state);
  update_m1(state);
  update_m2(state);
  update_m(state);
  update_duals(state);
  IterStats stats;
  stats.iteration = iteration;
  stats.objective = objective_at(state.m);
  stats.primal_residual = primal_residual(state);
  stats.dual_residual = config_.mu * (state.m - prev_m_).cwiseAbs().maxCoeff();
  return stats;
}

SolveReport solve_metric(const LabeledDataset& data, const SolverConfig& config,
                         const SolveObserver& observer) {
  config.validate();
  const PairSystem pairs = assemble_pairs(data, config.variant);
  AdmmWorkspace ws(pairs, config);
  AdmmState state = ws.init_state();

  SolveReport report;
  report.variant = config.variant;
  const int n_pos = static_cast<int>(data.indices_with_label(1).size());
  const int n_neg = data.n() - n_pos;
  report.imbalance_ratio = static_cast<double>(std::max(n_pos, n_neg)) /
                           static_cast<double>(std::min(n_pos, n_neg));

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_m = state.m;
  int best_iter = 0;
  int streak = 0;
  int used = 0;
  for (int it = 0; it < config.max_iter; ++it) {
    const IterStats stats = ws.step(state, it);
    used = it + 1;
    report.objective_trace.push_back(stats.objective);
    report.primal_residual_trace.push_back(stats.primal_residual);
    report.dual_residual_trace.push_back(stats.dual_residual);
    if (stats.objective < best) {
      best = stats.objective;
      best_m = state.m;
      best_iter = it;
    }
    if (observer) observer(state, stats);
    if (stats.primal_residual < config.tol && stats.dual_residual < config.tol) {
      ++streak;
      if (streak >= config.consecutive) {
        report.converged = true;
        break;
      }
    } else {
      streak = 0;
    }
  }
  report.iterations = used;
  report.best_objective = best;
  report.best_iteration = best_iter;
  report.metric = MetricMatrix::from_dense(unvec(state.m, pairs.p));
  report.best_metric = MetricMatrix::from_dense(unvec(best_m, pairs.p));
  const ObjectiveParts parts = objective_parts(pairs, state.m, config.c, config.backend);
  report.d_final = parts.d;
  report.slack_sum_final = parts.slack_sum;
  report.final_objective = parts.value;
  return report;
}

json SolveReport::to_json(const SolverConfig& config) const {
  json cfg = json::object();
  cfg["c"] = config.c;
  cfg["mu"] = config.mu;
  cfg["max_iter"] = config.max_iter;
  cfg["tol"] = config.tol;
  cfg["bisect_tol"] = config.bisect_tol;
  cfg["consecutive"] = config.consecutive;
  cfg["variant"] = variant_name(config.variant);

  json doc = json::object();
  doc["format"] = "lipmr.solve_report.v1";
  doc["variant"] = variant_name(variant);
  doc["converged"] = converged;
  doc["iterations"] = iterations;
  doc["final_objective"] = final_objective;
  doc["best_objective"] = best_objective;
  doc["best_iteration"] = best_iteration;
  doc["d_final"] = d_final;
  doc["slack_sum_final"] = slack_sum_final;
  doc["imbalance_ratio"] = imbalance_ratio;
  doc["config"] = std::move(cfg);
  json meta = json::object();
  meta["source"] = "admm." + variant_name(variant);
  doc["metric"] = metric.to_json(meta);
  json best_meta = json::object();
  best_meta["source"] = "admm." + variant_name(variant) + ".best";
  doc["best_metric"] = best_metric.to_json(best_meta);
  doc["objective_trace"] = objective_trace;
  doc["primal_residual_trace"] = primal_residual_trace;
  doc["dual_residual_trace"] = dual_residual_trace;
  return doc;
}

}  // namespace lipmr
