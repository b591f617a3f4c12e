#include "lipmr/bounds.hpp"

#include <cmath>
#include <limits>

#include "lipmr/errors.hpp"

namespace lipmr {

json BoundResult::to_json() const {
  json doc = json::object();
  doc["fat_dim"] = encode_real_or_inf(fat_dim);
  doc["fat_overflow"] = fat_overflow;
  doc["required_n"] = encode_real_or_inf(required_n);
  doc["condition_met"] = condition_met;
  doc["raw"] = encode_real_or_inf(raw);
  doc["clamped"] = clamped;
  doc["vacuous"] = vacuous;
  return doc;
}

BoundResult generalization_bound(long long n, long long k, double delta, double ddim,
                                 double surrogate_c) {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (k < 0 || k > n) throw ConfigError("k must lie in [0, n]");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(ddim > 0.0) || !std::isfinite(ddim)) throw ConfigError("ddim must be a positive real");
  if (!(surrogate_c > 0.0) || !std::isfinite(surrogate_c))
    throw ConfigError("surrogate C must be a positive real");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double e = std::exp(1.0);

  BoundResult res;
  res.fat_dim = std::pow(16.0 * surrogate_c, ddim);
  res.fat_overflow = std::isinf(res.fat_dim);
  res.required_n = res.fat_dim / (34.0 * e);
  res.condition_met =
      !res.fat_overflow && static_cast<double>(n) >= res.required_n;
  if (!res.condition_met) {
    res.raw = kInf;
    res.clamped = 1.0;
    res.vacuous = true;
    return res;
  }
  const double nd = static_cast<double>(n);
  const double complexity = res.fat_dim * std::log2(34.0 * e * nd / res.fat_dim) *
                                std::log2(578.0 * nd) +
                            std::log2(4.0 / delta);
  res.raw = static_cast<double>(k) / nd + std::sqrt((2.0 / nd) * complexity);
  res.clamped = std::min(res.raw, 1.0);
  res.vacuous = res.raw >= 1.0;
  return res;
}

double surrogate_c_diam(const MarginReport& report) {
  if (report.margin == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::sqrt(report.diam_all) / std::sqrt(report.margin);
}

double surrogate_c_intra(const MarginReport& report) {
  if (report.margin == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * (std::sqrt(report.diam_pos) + std::sqrt(report.diam_neg)) /
             std::sqrt(report.margin) +
         2.0;
}

}  // namespace lipmr
