#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lipmr/dataset.hpp"
#include "lipmr/types.hpp"

namespace lipmr {

// Which pair set defines the diameter being traded against the margin:
// lipd bounds the diameter over all pairs, lipi over same-label pairs only.
enum class Variant { lipd, lipi };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Implicit constraint matrices over vectorized metrics. Row r of system 1 is
// vec(d_r d_r^T) for the r-th cross-class difference d_r, so (A1 m) lists the
// squared cross-class distances under unvec(m); system 2 does the same for
// the diameter pair set. Only the difference vectors are stored; rows
// materialize on demand. Pairs are enumerated i < j in lexicographic order.
struct PairSystem {
  int p = 0;
  Variant variant = Variant::lipd;
  MatrixRM diffs1;  // n1 x p cross-class differences
  MatrixRM diffs2;  // n2 x p diameter-set differences
  std::vector<std::pair<int, int>> pairs1;
  std::vector<std::pair<int, int>> pairs2;

  int n1() const { return static_cast<int>(diffs1.rows()); }
  int n2() const { return static_cast<int>(diffs2.rows()); }
  int pp() const { return p * p; }

  // Column-stacked vec(d_r d_r^T) for tests and dense reconstructions.
  Eigen::VectorXd materialize_row1(int r) const;
  Eigen::VectorXd materialize_row2(int r) const;
};

// SingleClass when no cross-class pair exists; NoSameLabelPairs when the
// lipi diameter set would be empty.
PairSystem assemble_pairs(const LabeledDataset& data, Variant variant);

}  // namespace lipmr
