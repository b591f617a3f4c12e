#include "lipmr/margin.hpp"

#include <cmath>
#include <limits>

#include "kernels_detail.hpp"
#include "lipmr/errors.hpp"

namespace lipmr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_ratio(double margin, double denom) {
  if (denom == 0.0) return margin == 0.0 ? 0.0 : kInf;
  return margin / denom;
}

json pair_json(const std::pair<int, int>& p) {
  return json::array({p.first, p.second});
}

MarginReport report_from_extrema(const kernels::PairExtrema& ex) {
  if (ex.min_raw < kernels::detail::kClampFloor)
    throw NotPsd("squared distance " + std::to_string(ex.min_raw) + " is negative");
  if (ex.min_cross_i < 0) throw SingleClass("margin needs at least one point of each label");
  MarginReport rep;
  rep.margin = ex.min_cross;
  rep.argmin_pair = {ex.min_cross_i, ex.min_cross_j};
  rep.diam_all = ex.max_all;
  rep.argmax_all = {ex.max_all_i, ex.max_all_j};
  rep.diam_pos = ex.max_pos_i < 0 ? 0.0 : ex.max_pos;
  rep.argmax_pos = {ex.max_pos_i, ex.max_pos_j};
  rep.diam_neg = ex.max_neg_i < 0 ? 0.0 : ex.max_neg;
  rep.argmax_neg = {ex.max_neg_i, ex.max_neg_j};
  rep.ratio_diam = safe_ratio(rep.margin, rep.diam_all);
  rep.ratio_intra = safe_ratio(rep.margin, rep.diam_pos + rep.diam_neg);
  rep.l0 = rep.margin == 0.0 ? kInf : 2.0 / rep.margin;
  return rep;
}

void remap_pair(std::pair<int, int>& p, const std::vector<int>& idx) {
  if (p.first >= 0) p.first = idx[static_cast<std::size_t>(p.first)];
  if (p.second >= 0) p.second = idx[static_cast<std::size_t>(p.second)];
}

}  // namespace

json MarginReport::to_json() const {
  json doc = json::object();
  doc["margin"] = margin;
  doc["diam_all"] = diam_all;
  doc["diam_pos"] = diam_pos;
  doc["diam_neg"] = diam_neg;
  doc["ratio_diam"] = encode_real_or_inf(ratio_diam);
  doc["ratio_intra"] = encode_real_or_inf(ratio_intra);
  doc["l0"] = encode_real_or_inf(l0);
  doc["argmin_pair"] = pair_json(argmin_pair);
  doc["argmax_all"] = pair_json(argmax_all);
  doc["argmax_pos"] = pair_json(argmax_pos);
  doc["argmax_neg"] = pair_json(argmax_neg);
  return doc;
}

MarginReport margin_report(const LabeledDataset& data, const MetricMatrix& metric,
                           kernels::Backend backend) {
  if (data.n() < 2) throw SingleClass("need at least two points");
  if (data.dim() != metric.dim())
    throw DimensionMismatch("data has " + std::to_string(data.dim()) +
                            " features, metric is " + std::to_string(metric.dim()) + "-dim");
  return report_from_extrema(kernels::pair_extrema(data.x, data.y, metric.mat(), backend));
}

MarginReport local_margin_report(const LabeledDataset& data, const std::vector<int>& idx,
                                 const MetricMatrix& metric, kernels::Backend backend) {
  MarginReport rep = margin_report(subset(data, idx), metric, backend);
  remap_pair(rep.argmin_pair, idx);
  remap_pair(rep.argmax_all, idx);
  remap_pair(rep.argmax_pos, idx);
  remap_pair(rep.argmax_neg, idx);
  return rep;
}

double lipschitz_l0(const LabeledDataset& data, const MetricMatrix& metric,
                    kernels::Backend backend) {
  return margin_report(data, metric, backend).l0;
}

}  // namespace lipmr
