#pragma once

#include <cstdint>

#include "lipmr/json_util.hpp"
#include "lipmr/margin.hpp"

namespace lipmr {

// Risk bound for a Lipschitz classifier on n samples with k margin mistakes,
// valid with probability 1 - delta when the scale-sensitive dimension
// D = (16 C)^ddim satisfies n >= D / (34 e):
//   k/n + sqrt((2/n) * (D * log2(34 e n / D) * log2(578 n) + log2(4 / delta)))
// C is a Lipschitz-constant/diameter product supplied by the caller.
struct BoundResult {
  double fat_dim = 0.0;  // D, +inf when (16 C)^ddim overflows
  bool fat_overflow = false;
  double required_n = 0.0;  // D / (34 e)
  bool condition_met = false;
  double raw = 0.0;      // +inf when the validity condition fails
  double clamped = 0.0;  // min(raw, 1)
  bool vacuous = false;  // raw >= 1

  json to_json() const;
};

BoundResult generalization_bound(long long n, long long k, double delta, double ddim,
                                 double surrogate_c);

// Surrogate C values from a margin report. The report stores squared
// distances, but C belongs to the covering-number argument, which needs a
// true metric, so both surrogates are evaluated on square roots: with
// m = sqrt(margin) and L = 2/m, the all-pairs form is L * sqrt(diam_all)
// and the intra-class form L * (sqrt(diam_pos) + sqrt(diam_neg)) + 2. Both
// are >= 2, the diam form never exceeds the intra form, and a zero margin
// yields +inf (which generalization_bound rejects). The same square-root
// reading applies wherever diameters trade against the margin additively;
// the squared form does not satisfy the triangle inequality, and the
// additive bounds are false for it.
double surrogate_c_diam(const MarginReport& report);
double surrogate_c_intra(const MarginReport& report);

}  // namespace lipmr
