#include "lipmr/pairs.hpp"

#include "lipmr/errors.hpp"

namespace lipmr {

std::string variant_name(Variant v) { return v == Variant::lipd ? "lipd" : "lipi"; }

Variant variant_from_name(const std::string& name) {
  if (name == "lipd") return Variant::lipd;
  if (name == "lipi") return Variant::lipi;
  throw ConfigError("unknown variant '" + name + "' (expected lipd or lipi)");
}

namespace {

Eigen::VectorXd materialize(const MatrixRM& diffs, int r, int p) {
  LIPMR_ASSERT(r >= 0 && r < diffs.rows(), "pair row index out of range");
  Eigen::VectorXd out(p * p);
  for (int b = 0; b < p; ++b) {
    for (int a = 0; a < p; ++a) out[a + b * p] = diffs(r, a) * diffs(r, b);
  }
  return out;
}

}  // namespace

Eigen::VectorXd PairSystem::materialize_row1(int r) const { return materialize(diffs1, r, p); }
Eigen::VectorXd PairSystem::materialize_row2(int r) const { return materialize(diffs2, r, p); }

PairSystem assemble_pairs(const LabeledDataset& data, Variant variant) {
  const int n = data.n();
  if (n < 2) throw SingleClass("need at least two points to form pairs");
  PairSystem sys;
  sys.p = data.dim();
  sys.variant = variant;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (data.y[i] != data.y[j]) {
        sys.pairs1.emplace_back(i, j);
      }
      if (variant == Variant::lipd || data.y[i] == data.y[j]) {
        sys.pairs2.emplace_back(i, j);
      }
    }
  }
  if (sys.pairs1.empty()) throw SingleClass("no cross-class pairs");
  if (sys.pairs2.empty()) throw NoSameLabelPairs();
  sys.diffs1.resize(static_cast<Eigen::Index>(sys.pairs1.size()), sys.p);
  for (std::size_t r = 0; r < sys.pairs1.size(); ++r) {
    const auto [i, j] = sys.pairs1[r];
    sys.diffs1.row(static_cast<Eigen::Index>(r)) = data.x.row(i) - data.x.row(j);
  }
  sys.diffs2.resize(static_cast<Eigen::Index>(sys.pairs2.size()), sys.p);
  for (std::size_t r = 0; r < sys.pairs2.size(); ++r) {
    const auto [i, j] = sys.pairs2[r];
    sys.diffs2.row(static_cast<Eigen::Index>(r)) = data.x.row(i) - data.x.row(j);
  }
  return sys;
}

}  // namespace lipmr
