#include "lipmr/classifier.hpp"

#include <cmath>

#include "kernels_detail.hpp"
#include "lipmr/errors.hpp"
#include "lipmr/margin.hpp"

namespace lipmr {

Eigen::VectorXi LipschitzModel::anchor_labels() const {
  Eigen::VectorXi labels(anchor_values.size());
  for (int i = 0; i < anchor_values.size(); ++i) labels[i] = anchor_values[i] > 0 ? 1 : -1;
  return labels;
}

void LipschitzModel::validate() const {
  if (anchors.rows() == 0) throw EmptyAnchors();
  if (anchor_values.size() != anchors.rows())
    throw DimensionMismatch("model has " + std::to_string(anchors.rows()) + " anchors but " +
                            std::to_string(anchor_values.size()) + " anchor values");
  for (int i = 0; i < anchor_values.size(); ++i) {
    if (anchor_values[i] != 1.0 && anchor_values[i] != -1.0)
      throw BadDocument("anchor values must be -1 or +1");
  }
  if (!(lip_constant > 0.0) || !std::isfinite(lip_constant))
    throw BadDocument("model Lipschitz constant must be a positive real");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw BadDocument("model alpha must lie in [0, 1]");
  if (metric.dim() != anchors.cols())
    throw DimensionMismatch("model metric is " + std::to_string(metric.dim()) +
                            "-dim but anchors have " + std::to_string(anchors.cols()) +
                            " features");
  if (standardizer && standardizer->mean.size() != anchors.cols())
    throw DimensionMismatch("model standardizer does not match anchor width");
}

LipschitzModel build_model(const LabeledDataset& data, const MetricMatrix& metric,
                           std::optional<double> lip, double alpha,
                           std::optional<Standardizer> standardizer, kernels::Backend backend) {
  if (!data.has_both_classes()) throw SingleClass("a model needs anchors of both labels");
  LipschitzModel model;
  model.anchors = standardizer ? standardizer->apply(data.x) : data.x;
  model.anchor_values = data.y.cast<double>();
  model.metric = metric;
  model.alpha = alpha;
  model.standardizer = std::move(standardizer);
  if (lip) {
    model.lip_constant = *lip;
  } else {
    LabeledDataset anchored{model.anchors, data.y};
    const double l0 = lipschitz_l0(anchored, metric, backend);
    model.lip_constant = std::isfinite(l0) ? l0 : 1.0;
  }
  model.validate();
  return model;
}

namespace {

MatrixRM transformed_queries(const LipschitzModel& model, const MatrixRM& queries) {
  if (queries.cols() != model.anchors.cols())
    throw DimensionMismatch("queries have " + std::to_string(queries.cols()) +
                            " features, model expects " + std::to_string(model.anchors.cols()));
  return model.standardizer ? model.standardizer->apply(queries) : queries;
}

void check_min_raw(double min_raw) {
  if (min_raw < kernels::detail::kClampFloor)
    throw NotPsd("squared distance " + std::to_string(min_raw) + " is negative");
}

}  // namespace

Eigen::VectorXd extension_values(const LipschitzModel& model, const MatrixRM& queries,
                                 kernels::Backend backend) {
  model.validate();
  const MatrixRM q = transformed_queries(model, queries);
  Eigen::VectorXd out;
  const double min_raw =
      kernels::extension_values_batch(model.anchors, model.anchor_values, model.lip_constant,
                                      model.alpha, model.metric.mat(), q, out, backend);
  check_min_raw(min_raw);
  return out;
}

double extension_value(const LipschitzModel& model, Eigen::Ref<const Eigen::VectorXd> x) {
  MatrixRM one(1, x.size());
  one.row(0) = x.transpose();
  return extension_values(model, one, kernels::Backend::serial)[0];
}

std::vector<Prediction> predict_extension(const LipschitzModel& model, const MatrixRM& queries,
                                          kernels::Backend backend) {
  const Eigen::VectorXd vals = extension_values(model, queries, backend);
  std::vector<Prediction> preds(static_cast<std::size_t>(vals.size()));
  for (int i = 0; i < vals.size(); ++i) {
    Prediction& pr = preds[static_cast<std::size_t>(i)];
    if (vals[i] > 0.0) {
      pr.label = 1;
    } else if (vals[i] < 0.0) {
      pr.label = -1;
    } else {
      pr.label = 1;
      pr.tie = true;
    }
  }
  return preds;
}

std::vector<Prediction> predict_nn(const LipschitzModel& model, const MatrixRM& queries,
                                   kernels::Backend backend) {
  model.validate();
  const MatrixRM q = transformed_queries(model, queries);
  Eigen::VectorXi labels;
  std::vector<std::uint8_t> ties;
  const double min_raw = kernels::nn_predict_batch(model.anchors, model.anchor_labels(),
                                                   model.metric.mat(), q, labels, ties, backend);
  check_min_raw(min_raw);
  std::vector<Prediction> preds(static_cast<std::size_t>(labels.size()));
  for (int i = 0; i < labels.size(); ++i) {
    preds[static_cast<std::size_t>(i)].label = labels[i];
    preds[static_cast<std::size_t>(i)].tie = ties[static_cast<std::size_t>(i)] != 0;
  }
  return preds;
}

double empirical_risk(const std::vector<Prediction>& preds, const Eigen::VectorXi& truth) {
  LIPMR_ASSERT(static_cast<Eigen::Index>(preds.size()) == truth.size(),
               "empirical_risk: size mismatch");
  LIPMR_ASSERT(!preds.empty(), "empirical_risk: empty prediction set");
  int wrong = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].label != truth[static_cast<Eigen::Index>(i)]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(preds.size());
}

json LipschitzModel::to_json() const {
  json doc = json::object();
  doc["format"] = "lipmr.model.v1";
  doc["metric"] = metric.to_json();
  json anchors_json = json::array();
  for (int r = 0; r < anchors.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < anchors.cols(); ++c) row.push_back(anchors(r, c));
    anchors_json.push_back(std::move(row));
  }
  doc["anchors"] = std::move(anchors_json);
  doc["anchor_values"] =
      std::vector<double>(anchor_values.data(), anchor_values.data() + anchor_values.size());
  doc["lip_constant"] = lip_constant;
  doc["alpha"] = alpha;
  doc["standardizer"] = standardizer ? standardizer->to_json() : json(nullptr);
  return doc;
}

LipschitzModel LipschitzModel::from_json(const json& doc) {
  if (get_string(doc, "format") != "lipmr.model.v1")
    throw BadDocument("unrecognized model format tag");
  LipschitzModel model;
  model.metric = MetricMatrix::from_json(require(doc, "metric"));
  const json& anchors = require(doc, "anchors");
  if (!anchors.is_array() || anchors.empty()) throw EmptyAnchors();
  const int n = static_cast<int>(anchors.size());
  const json& first = anchors[0];
  if (!first.is_array() || first.empty()) throw BadDocument("anchor rows must be numeric arrays");
  const int p = static_cast<int>(first.size());
  model.anchors.resize(n, p);
  for (int r = 0; r < n; ++r) {
    const json& row = anchors[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != p)
      throw RaggedRow(r, static_cast<int>(row.size()), p);
    for (int c = 0; c < p; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw BadDocument("anchor entries must be numbers");
      model.anchors(r, c) = v.get<double>();
    }
  }
  const auto values = require(doc, "anchor_values").get<std::vector<double>>();
  model.anchor_values =
      Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  model.lip_constant = get_double(doc, "lip_constant");
  model.alpha = get_double(doc, "alpha");
  const json& std_json = require(doc, "standardizer");
  if (!std_json.is_null()) model.standardizer = Standardizer::from_json(std_json);
  model.validate();
  return model;
}

}  // namespace lipmr
