#include "lipmr/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#include "lipmr/errors.hpp"

namespace lipmr {

std::string eval_variant_name(EvalVariant v) {
  switch (v) {
    case EvalVariant::nn:
      return "nn";
    case EvalVariant::lipd:
      return "lipd";
    default:
      return "lipi";
  }
}

EvalVariant eval_variant_from_name(const std::string& name) {
  if (name == "nn") return EvalVariant::nn;
  if (name == "lipd") return EvalVariant::lipd;
  if (name == "lipi") return EvalVariant::lipi;
  throw ConfigError("unknown variant '" + name + "' (expected nn, lipd, or lipi)");
}

namespace {

SplitResult evaluate_split(const LabeledDataset& data, const Split& split, EvalVariant variant,
                           const ExperimentConfig& config) {
  const LabeledDataset train = subset(data, split.train);
  const LabeledDataset test = subset(data, split.test);
  std::optional<Standardizer> standardizer;
  if (config.standardize) standardizer = fit_standardizer(train.x);

  SplitResult result;
  LipschitzModel model;
  if (variant == EvalVariant::nn) {
    model = build_model(train, MetricMatrix::identity(train.dim()), 1.0, 0.5, standardizer,
                        config.solver.backend);
  } else {
    LabeledDataset solver_input{standardizer ? standardizer->apply(train.x) : train.x, train.y};
    SolverConfig solver = config.solver;
    solver.variant = variant == EvalVariant::lipd ? Variant::lipd : Variant::lipi;
    const SolveReport report = solve_metric(solver_input, solver);
    result.converged = report.converged;
    result.iterations = report.iterations;
    result.final_objective = report.final_objective;
    model = build_model(train, report.metric, std::nullopt, 0.5, standardizer,
                        config.solver.backend);
  }
  const std::vector<Prediction> preds =
      variant == EvalVariant::nn ? predict_nn(model, test.x, config.solver.backend)
                                 : predict_extension(model, test.x, config.solver.backend);
  result.accuracy = 1.0 - empirical_risk(preds, test.y);
  for (const Prediction& pr : preds) {
    if (pr.tie) ++result.ties;
  }
  return result;
}

double mean_of(const std::vector<SplitResult>& splits) {
  double s = 0.0;
  for (const SplitResult& r : splits) s += r.accuracy;
  return s / static_cast<double>(splits.size());
}

double sample_std(const std::vector<SplitResult>& splits, double mean) {
  if (splits.size() < 2) return 0.0;
  double s = 0.0;
  for (const SplitResult& r : splits) s += (r.accuracy - mean) * (r.accuracy - mean);
  return std::sqrt(s / static_cast<double>(splits.size() - 1));
}

}  // namespace

ExperimentOutcome run_experiment(const LabeledDataset& data, const ExperimentConfig& config) {
  if (config.variants.empty()) throw ConfigError("experiment needs at least one variant");
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentOutcome outcome;
  outcome.splits = make_splits(data, config.plan);
  const int n_variants = static_cast<int>(config.variants.size());
  const int n_splits = static_cast<int>(outcome.splits.size());

  outcome.variants.resize(static_cast<std::size_t>(n_variants));
  outcome.wall_ms.assign(static_cast<std::size_t>(n_variants),
                         std::vector<double>(static_cast<std::size_t>(n_splits), 0.0));

  // Flat (variant, split) grid; cells are independent, results land by index.
  const int cells = n_variants * n_splits;
  std::vector<SplitResult> results(static_cast<std::size_t>(cells));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic)
  for (int cell = 0; cell < cells; ++cell) {
    const int vi = cell / n_splits;
    const int si = cell % n_splits;
    const auto cell_t0 = std::chrono::steady_clock::now();
    try {
      results[static_cast<std::size_t>(cell)] = evaluate_split(
          data, outcome.splits[static_cast<std::size_t>(si)], config.variants[static_cast<std::size_t>(vi)], config);
    } catch (...) {
      failures[static_cast<std::size_t>(cell)] = std::current_exception();
    }
    const auto cell_t1 = std::chrono::steady_clock::now();
    outcome.wall_ms[static_cast<std::size_t>(vi)][static_cast<std::size_t>(si)] =
        std::chrono::duration<double, std::milli>(cell_t1 - cell_t0).count();
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  for (int vi = 0; vi < n_variants; ++vi) {
    VariantOutcome& vo = outcome.variants[static_cast<std::size_t>(vi)];
    vo.variant = config.variants[static_cast<std::size_t>(vi)];
    vo.splits.assign(results.begin() + static_cast<std::ptrdiff_t>(vi) * n_splits,
                     results.begin() + static_cast<std::ptrdiff_t>(vi + 1) * n_splits);
    vo.mean_accuracy = mean_of(vo.splits);
    vo.std_accuracy = sample_std(vo.splits, vo.mean_accuracy);
  }
  const auto t1 = std::chrono::steady_clock::now();
  outcome.total_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return outcome;
}

json experiment_to_json(const ExperimentOutcome& outcome, const ExperimentConfig& config,
                        const DatasetInfo& dataset, const std::string& timestamp) {
  json doc = json::object();
  doc["format"] = "lipmr.experiment.v1";

  json ds = json::object();
  ds["path"] = dataset.path;
  ds["format"] = dataset.format == DataFormat::csv ? "csv" : "libsvm";
  ds["n"] = dataset.n;
  ds["p"] = dataset.p;
  json lm = json::array();
  for (const LabelMapEntry& e : dataset.label_map) {
    json entry = json::object();
    entry["raw"] = e.raw;
    entry["mapped"] = e.mapped;
    lm.push_back(std::move(entry));
  }
  ds["label_map"] = std::move(lm);
  doc["dataset"] = std::move(ds);

  doc["standardize"] = config.standardize;

  json plan = json::object();
  plan["train_fraction"] = config.plan.train_fraction;
  plan["repeats"] = config.plan.repeats;
  plan["seed"] = config.plan.seed;
  if (!outcome.splits.empty()) {
    plan["train_size"] = static_cast<int>(outcome.splits[0].train.size());
    plan["test_size"] = static_cast<int>(outcome.splits[0].test.size());
  }
  doc["split_plan"] = std::move(plan);

  json solver = json::object();
  solver["c"] = config.solver.c;
  solver["mu"] = config.solver.mu;
  solver["max_iter"] = config.solver.max_iter;
  solver["tol"] = config.solver.tol;
  solver["bisect_tol"] = config.solver.bisect_tol;
  solver["consecutive"] = config.solver.consecutive;
  doc["solver"] = std::move(solver);

  json results = json::array();
  for (const VariantOutcome& vo : outcome.variants) {
    json v = json::object();
    v["variant"] = eval_variant_name(vo.variant);
    v["mean_accuracy"] = vo.mean_accuracy;
    v["std_accuracy"] = vo.std_accuracy;
    json per_split = json::array();
    for (const SplitResult& r : vo.splits) {
      json s = json::object();
      s["accuracy"] = r.accuracy;
      s["converged"] = r.converged;
      s["iterations"] = r.iterations;
      s["final_objective"] = r.final_objective;
      s["ties"] = r.ties;
      per_split.push_back(std::move(s));
    }
    v["per_split"] = std::move(per_split);
    results.push_back(std::move(v));
  }
  doc["results"] = std::move(results);

  json timing = json::object();
  timing["timestamp"] = timestamp;
  timing["total_ms"] = outcome.total_ms;
  json per_variant = json::array();
  for (std::size_t vi = 0; vi < outcome.wall_ms.size(); ++vi) {
    per_variant.push_back(outcome.wall_ms[vi]);
  }
  timing["wall_ms"] = std::move(per_variant);
  doc["timing_meta"] = std::move(timing);
  return doc;
}

std::string experiment_to_csv(const ExperimentOutcome& outcome) {
  std::string out = "variant,split,accuracy\n";
  char buf[64];
  for (const VariantOutcome& vo : outcome.variants) {
    const std::string name = eval_variant_name(vo.variant);
    for (std::size_t si = 0; si < vo.splits.size(); ++si) {
      std::snprintf(buf, sizeof(buf), "%.17g", vo.splits[si].accuracy);
      out += name + "," + std::to_string(si) + "," + buf + "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.17g", vo.mean_accuracy);
    out += name + ",mean," + buf + "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", vo.std_accuracy);
    out += name + ",std," + buf + "\n";
  }
  return out;
}

}  // namespace lipmr
