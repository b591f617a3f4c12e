#pragma once

#include <string>
#include <vector>

#include "lipmr/admm.hpp"
#include "lipmr/classifier.hpp"
#include "lipmr/dataset.hpp"

namespace lipmr {

// What gets evaluated on each split: nearest neighbor under the identity
// metric, or the blended-envelope classifier under a learned metric.
enum class EvalVariant { nn, lipd, lipi };

std::string eval_variant_name(EvalVariant v);
EvalVariant eval_variant_from_name(const std::string& name);

struct ExperimentConfig {
  SplitPlan plan{0.6, 10, 0};
  SolverConfig solver;  // variant field is overridden per evaluation
  bool standardize = true;
  std::vector<EvalVariant> variants{EvalVariant::nn, EvalVariant::lipd, EvalVariant::lipi};
};

struct SplitResult {
  double accuracy = 0.0;  // fraction of test rows classified correctly
  bool converged = true;  // solver convergence; true for nn
  int iterations = 0;     // solver iterations; 0 for nn
  double final_objective = 0.0;  // 0 for nn
  int ties = 0;                  // flagged tie predictions on the test side
};

struct VariantOutcome {
  EvalVariant variant = EvalVariant::nn;
  std::vector<SplitResult> splits;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample standard deviation (n-1), 0 for a single repeat
};

struct ExperimentOutcome {
  std::vector<Split> splits;  // shared by all variants
  std::vector<VariantOutcome> variants;
  // Wall-clock measurements, [variant][split] and total. Everything above is
  // a pure function of data and config; timings are not and get serialized
  // into the separate timing_meta block.
  std::vector<std::vector<double>> wall_ms;
  double total_ms = 0.0;
};

// Protocol per split and variant: fit the standardizer on the train rows
// (when enabled), learn the metric on transformed train data (lipd/lipi),
// build the classifier from the train rows, score the test rows. Splits are
// precomputed from the plan, so results do not depend on evaluation order or
// thread count.
ExperimentOutcome run_experiment(const LabeledDataset& data, const ExperimentConfig& config);

struct DatasetInfo {
  std::string path;
  DataFormat format = DataFormat::csv;
  int n = 0;
  int p = 0;
  std::vector<LabelMapEntry> label_map;
};

// Full result document. Key order and number formatting are fixed; two runs
// with the same data and config produce identical bytes except inside
// "timing_meta", which holds the timestamp and wall-clock numbers.
json experiment_to_json(const ExperimentOutcome& outcome, const ExperimentConfig& config,
                        const DatasetInfo& dataset, const std::string& timestamp);

// One row per (variant, split) plus mean and std rows per variant.
std::string experiment_to_csv(const ExperimentOutcome& outcome);

}  // namespace lipmr
