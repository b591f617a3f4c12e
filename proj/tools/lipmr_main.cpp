#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipmr/admm.hpp"
#include "lipmr/bounds.hpp"
#include "lipmr/classifier.hpp"
#include "lipmr/dataset.hpp"
#include "lipmr/errors.hpp"
#include "lipmr/experiment.hpp"
#include "lipmr/margin.hpp"
#include "lipmr/oracle.hpp"

namespace {

using lipmr::json;

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool no_standardize = false;
  std::string variant = "lipd";
  double c = 1.0;
  double mu = 1.0;
  int max_iter = 2000;
  double tol = 1e-4;
  double train_fraction = 0.6;
  int repeats = 10;
  double ddim = 1.0;
  double delta = 0.05;
};

struct DataOpts {
  std::string path;
  std::string format = "auto";
  bool has_header = false;
  std::string label_column = "last";
};

void add_data_opts(CLI::App* cmd, DataOpts& opts) {
  cmd->add_option("--data", opts.path, "input data file (csv or libsvm)")->required();
  cmd->add_option("--format", opts.format, "data format: csv, libsvm, or auto")
      ->check(CLI::IsMember({"csv", "libsvm", "auto"}));
  cmd->add_flag("--has-header", opts.has_header, "first csv row is a header");
  cmd->add_option("--label-column", opts.label_column,
                  "label column: 'last', a 0-based index, or a header name");
}

lipmr::LoadedDataset load_from(const DataOpts& opts) {
  lipmr::LoadOptions lo;
  lo.format = opts.format;
  lo.has_header = opts.has_header;
  lo.label_column = opts.label_column;
  return lipmr::load_dataset(opts.path, lo);
}

std::string iso_timestamp_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = lipmr::dump17(doc);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    lipmr::write_text_file(out_path, text);
  }
}

json with_format_tag(const std::string& tag, const json& body) {
  json doc = json::object();
  doc["format"] = tag;
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

lipmr::SolverConfig solver_from(const GlobalOpts& g) {
  lipmr::SolverConfig cfg;
  cfg.c = g.c;
  cfg.mu = g.mu;
  cfg.max_iter = g.max_iter;
  cfg.tol = g.tol;
  return cfg;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, ',')) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

int run_fit(const GlobalOpts& g, const DataOpts& data_opts, const std::string& out_path,
            const std::string& report_path, std::optional<double> lip, double alpha) {
  const lipmr::LoadedDataset loaded = load_from(data_opts);
  const lipmr::LabeledDataset& data = loaded.data;
  if (!data.has_both_classes()) throw lipmr::SingleClass("fit needs both labels present");

  std::optional<lipmr::Standardizer> standardizer;
  if (!g.no_standardize) standardizer = lipmr::fit_standardizer(data.x);

  lipmr::LipschitzModel model;
  if (g.variant == "nn") {
    if (!report_path.empty())
      throw lipmr::ConfigError("--report needs a solver variant (lipd or lipi)");
    model = lipmr::build_model(data, lipmr::MetricMatrix::identity(data.dim()), lip, alpha,
                               standardizer);
    std::cout << "variant=nn anchors=" << data.n() << " metric=identity\n";
  } else {
    lipmr::SolverConfig solver = solver_from(g);
    solver.variant = lipmr::variant_from_name(g.variant);
    const lipmr::LabeledDataset solver_input{
        standardizer ? standardizer->apply(data.x) : data.x, data.y};
    const lipmr::SolveReport report = lipmr::solve_metric(solver_input, solver);
    if (!report.converged) {
      std::cerr << "warning: solver hit max_iter=" << solver.max_iter
                << " before both residuals stayed below tol=" << solver.tol
                << "; using the final iterate\n";
    }
    model = lipmr::build_model(data, report.metric, lip, alpha, standardizer);
    const std::string rp = report_path.empty() ? out_path + ".report.json" : report_path;
    lipmr::write_text_file(rp, lipmr::dump17(report.to_json(solver)));
    std::cout << "variant=" << g.variant << " converged=" << (report.converged ? "yes" : "no")
              << " iterations=" << report.iterations << " objective=" << report.final_objective
              << " report=" << rp << "\n";
  }
  lipmr::write_text_file(out_path, lipmr::dump17(model.to_json()));
  std::cout << "lip_constant=" << model.lip_constant << " model=" << out_path << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const DataOpts& data_opts,
                const std::string& out_path) {
  const lipmr::LipschitzModel model =
      lipmr::LipschitzModel::from_json(lipmr::parse_json_file(model_path));
  const lipmr::LoadedDataset loaded = load_from(data_opts);
  const Eigen::VectorXd values = lipmr::extension_values(model, loaded.data.x);
  const std::vector<lipmr::Prediction> preds = lipmr::predict_extension(model, loaded.data.x);

  json body = json::object();
  body["n"] = loaded.data.n();
  body["accuracy"] = 1.0 - lipmr::empirical_risk(preds, loaded.data.y);
  int ties = 0;
  json labels = json::array();
  json tie_flags = json::array();
  json vals = json::array();
  for (std::size_t i = 0; i < preds.size(); ++i) {
    labels.push_back(preds[i].label);
    tie_flags.push_back(preds[i].tie);
    vals.push_back(values[static_cast<Eigen::Index>(i)]);
    if (preds[i].tie) ++ties;
  }
  body["ties"] = ties;
  body["labels"] = std::move(labels);
  body["tie_flags"] = std::move(tie_flags);
  body["values"] = std::move(vals);
  emit(with_format_tag("lipmr.predictions.v1", body), out_path);
  return 0;
}

int run_margin_report(const DataOpts& data_opts, const std::string& metric_path,
                      const std::string& subset_spec, const std::string& out_path) {
  const lipmr::LoadedDataset loaded = load_from(data_opts);
  const lipmr::MetricMatrix metric =
      metric_path.empty() ? lipmr::MetricMatrix::identity(loaded.data.dim())
                          : lipmr::MetricMatrix::from_json(lipmr::parse_json_file(metric_path));
  lipmr::MarginReport report;
  if (subset_spec.empty()) {
    report = lipmr::margin_report(loaded.data, metric);
  } else {
    std::vector<int> idx;
    for (const std::string& tok : split_commas(subset_spec)) {
      try {
        std::size_t consumed = 0;
        const int v = std::stoi(tok, &consumed);
        if (consumed != tok.size()) throw std::invalid_argument("trailing");
        if (v < 0 || v >= loaded.data.n())
          throw lipmr::ConfigError("subset index " + tok + " out of range");
        idx.push_back(v);
      } catch (const std::logic_error&) {
        throw lipmr::ConfigError("bad subset index '" + tok + "'");
      }
    }
    report = lipmr::local_margin_report(loaded.data, idx, metric);
  }
  emit(with_format_tag("lipmr.margin_report.v1", report.to_json()), out_path);
  return 0;
}

int run_experiment_cmd(const GlobalOpts& g, const DataOpts& data_opts,
                       const std::string& variants_spec, const std::string& out_json,
                       const std::string& out_csv) {
  const lipmr::LoadedDataset loaded = load_from(data_opts);
  lipmr::ExperimentConfig config;
  config.plan.train_fraction = g.train_fraction;
  config.plan.repeats = g.repeats;
  config.plan.seed = g.seed;
  config.solver = solver_from(g);
  config.standardize = !g.no_standardize;
  config.variants.clear();
  for (const std::string& name : split_commas(variants_spec)) {
    config.variants.push_back(lipmr::eval_variant_from_name(name));
  }

  const lipmr::ExperimentOutcome outcome = lipmr::run_experiment(loaded.data, config);

  lipmr::DatasetInfo info;
  info.path = data_opts.path;
  info.format = loaded.report.format;
  info.n = loaded.data.n();
  info.p = loaded.data.dim();
  info.label_map = loaded.report.label_map;
  const json doc = lipmr::experiment_to_json(outcome, config, info, iso_timestamp_utc());

  for (const lipmr::VariantOutcome& vo : outcome.variants) {
    std::cout << lipmr::eval_variant_name(vo.variant) << ": accuracy "
              << 100.0 * vo.mean_accuracy << " +- " << 100.0 * vo.std_accuracy << " over "
              << vo.splits.size() << " splits\n";
  }
  if (!out_json.empty()) lipmr::write_text_file(out_json, lipmr::dump17(doc));
  if (!out_csv.empty()) lipmr::write_text_file(out_csv, lipmr::experiment_to_csv(outcome));
  return 0;
}

int run_bound(const GlobalOpts& g, const std::string& data_path, const DataOpts& data_opts,
              const std::string& metric_path, const std::string& c_mode, double surrogate_c,
              long long n_override, long long k, const std::string& out_path) {
  double c_value = surrogate_c;
  long long n = n_override;
  std::string mode = "manual";
  if (!data_path.empty()) {
    const lipmr::LoadedDataset loaded = load_from(data_opts);
    const lipmr::MetricMatrix metric =
        metric_path.empty() ? lipmr::MetricMatrix::identity(loaded.data.dim())
                            : lipmr::MetricMatrix::from_json(lipmr::parse_json_file(metric_path));
    const lipmr::MarginReport report = lipmr::margin_report(loaded.data, metric);
    mode = c_mode;
    c_value = c_mode == "intra" ? lipmr::surrogate_c_intra(report)
                                : lipmr::surrogate_c_diam(report);
    if (n <= 0) n = loaded.data.n();
  } else {
    if (c_value <= 0.0)
      throw lipmr::ConfigError("pass --surrogate-c > 0 or derive it from --data");
    if (n <= 0) throw lipmr::ConfigError("pass --n when no data file is given");
  }
  const lipmr::BoundResult res = lipmr::generalization_bound(n, k, g.delta, g.ddim, c_value);
  json body = json::object();
  body["n"] = n;
  body["k"] = k;
  body["delta"] = g.delta;
  body["ddim"] = g.ddim;
  body["surrogate_c"] = c_value;
  body["c_mode"] = mode;
  const json res_doc = res.to_json();
  for (const auto& [key, value] : res_doc.items()) body[key] = value;
  emit(with_format_tag("lipmr.bound.v1", body), out_path);
  return 0;
}

int run_oracle(const GlobalOpts& g, const DataOpts& data_opts, int iterations, int restarts,
               double step_size, const std::string& out_path) {
  const lipmr::LoadedDataset loaded = load_from(data_opts);
  lipmr::OracleConfig config;
  config.iterations = iterations;
  config.restarts = restarts;
  config.step_size = step_size;
  config.seed = g.seed;
  const lipmr::OracleResult res =
      lipmr::oracle_solve(loaded.data, g.c, lipmr::variant_from_name(g.variant), config);
  json body = json::object();
  body["objective"] = res.objective;
  json meta = json::object();
  meta["source"] = "oracle." + g.variant;
  body["metric"] = res.metric.to_json(meta);
  emit(with_format_tag("lipmr.oracle.v1", body), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mahalanobis metric learning by margin-ratio maximization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "ini file with long option names as keys");

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed for splits and restarts");
  app.add_flag("--no-standardize", g.no_standardize, "skip per-column standardization");
  app.add_option("--variant", g.variant, "lipd, lipi, or nn")
      ->check(CLI::IsMember({"lipd", "lipi", "nn"}));
  app.add_option("--c", g.c, "diameter weight in the objective");
  app.add_option("--mu", g.mu, "augmented Lagrangian penalty");
  app.add_option("--max-iter", g.max_iter, "solver iteration cap");
  app.add_option("--tol", g.tol, "residual threshold for convergence");
  app.add_option("--train-fraction", g.train_fraction, "train share of each split");
  app.add_option("--repeats", g.repeats, "number of random splits");
  app.add_option("--ddim", g.ddim, "doubling dimension for the bound");
  app.add_option("--delta", g.delta, "confidence level for the bound");

  auto* fit = app.add_subcommand("fit", "learn a metric and build a classifier");
  DataOpts fit_data;
  add_data_opts(fit, fit_data);
  std::string fit_out, fit_report;
  double fit_lip = 0.0, fit_alpha = 0.5;
  bool fit_lip_set = false;
  fit->add_option("--out", fit_out, "model output path")->required();
  fit->add_option("--report", fit_report, "solver report path (default: <out>.report.json)");
  fit->add_option("--lip", fit_lip, "override the Lipschitz constant")
      ->check(CLI::PositiveNumber)
      ->each([&fit_lip_set](const std::string&) { fit_lip_set = true; });
  fit->add_option("--alpha", fit_alpha, "envelope blend weight in [0, 1]");

  auto* predict = app.add_subcommand("predict", "score a dataset with a saved model");
  DataOpts predict_data;
  add_data_opts(predict, predict_data);
  std::string predict_model, predict_out;
  predict->add_option("--model", predict_model, "model json path")->required();
  predict->add_option("--out", predict_out, "output path (stdout when omitted)");

  auto* margin = app.add_subcommand("margin-report", "margin and diameter diagnostics");
  DataOpts margin_data;
  add_data_opts(margin, margin_data);
  std::string margin_metric, margin_subset, margin_out;
  margin->add_option("--metric", margin_metric, "metric json path (identity when omitted)");
  margin->add_option("--subset", margin_subset, "comma-separated row indices");
  margin->add_option("--out", margin_out, "output path (stdout when omitted)");

  auto* experiment = app.add_subcommand("experiment", "repeated-split evaluation");
  DataOpts experiment_data;
  add_data_opts(experiment, experiment_data);
  std::string experiment_variants = "nn,lipd,lipi";
  std::string experiment_json, experiment_csv;
  experiment->add_option("--variants", experiment_variants, "comma-separated: nn, lipd, lipi");
  experiment->add_option("--out-json", experiment_json, "result document path");
  experiment->add_option("--out-csv", experiment_csv, "per-split accuracy table path");

  auto* bound = app.add_subcommand("bound", "evaluate the risk bound");
  DataOpts bound_data;
  std::string bound_metric, bound_cmode = "diam", bound_out;
  double bound_c = 0.0;
  long long bound_n = 0, bound_k = 0;
  bound->add_option("--data", bound_data.path, "derive the surrogate from this data file");
  bound->add_option("--format", bound_data.format, "data format: csv, libsvm, or auto")
      ->check(CLI::IsMember({"csv", "libsvm", "auto"}));
  bound->add_flag("--has-header", bound_data.has_header, "first csv row is a header");
  bound->add_option("--label-column", bound_data.label_column,
                    "label column: 'last', a 0-based index, or a header name");
  bound->add_option("--metric", bound_metric, "metric json path (identity when omitted)");
  bound->add_option("--c-mode", bound_cmode, "surrogate from margins: diam or intra")
      ->check(CLI::IsMember({"diam", "intra"}));
  bound->add_option("--surrogate-c", bound_c, "surrogate C given directly");
  bound->add_option("--n", bound_n, "sample size (defaults to the data size)");
  bound->add_option("--k", bound_k, "margin mistakes");
  bound->add_option("--out", bound_out, "output path (stdout when omitted)");

  auto* oracle = app.add_subcommand("oracle", "reference solver for small instances");
  oracle->group("");  // hidden
  DataOpts oracle_data;
  add_data_opts(oracle, oracle_data);
  int oracle_iters = 20000, oracle_restarts = 3;
  double oracle_step = 0.5;
  std::string oracle_out;
  oracle->add_option("--iterations", oracle_iters, "subgradient steps per restart");
  oracle->add_option("--restarts", oracle_restarts, "number of restarts");
  oracle->add_option("--step-size", oracle_step, "step scale");
  oracle->add_option("--out", oracle_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // help/version
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(fit)) {
      return run_fit(g, fit_data, fit_out, fit_report,
                     fit_lip_set ? std::optional<double>(fit_lip) : std::nullopt, fit_alpha);
    }
    if (app.got_subcommand(predict)) {
      return run_predict(predict_model, predict_data, predict_out);
    }
    if (app.got_subcommand(margin)) {
      return run_margin_report(margin_data, margin_metric, margin_subset, margin_out);
    }
    if (app.got_subcommand(experiment)) {
      return run_experiment_cmd(g, experiment_data, experiment_variants, experiment_json,
                                experiment_csv);
    }
    if (app.got_subcommand(bound)) {
      return run_bound(g, bound_data.path, bound_data, bound_metric, bound_cmode, bound_c,
                       bound_n, bound_k, bound_out);
    }
    if (app.got_subcommand(oracle)) {
      return run_oracle(g, oracle_data, oracle_iters, oracle_restarts, oracle_step, oracle_out);
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const lipmr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case lipmr::ErrorKind::input:
        return 2;
      case lipmr::ErrorKind::solver:
        return 3;
      default:
        return 4;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
