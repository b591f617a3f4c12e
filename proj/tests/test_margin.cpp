#include <doctest.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "helpers.hpp"
#include "lipmr/errors.hpp"
#include "lipmr/margin.hpp"
#include "lipmr/metric.hpp"

using lipmr::LabeledDataset;
using lipmr::MarginReport;
using lipmr::MetricMatrix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D points -3, -1 labeled +1 and +1, +3 labeled -1.
LabeledDataset two_vs_two() {
  LabeledDataset data;
  data.x.resize(4, 1);
  data.x << -3.0, -1.0, 1.0, 3.0;
  data.y.resize(4);
  data.y << 1, 1, -1, -1;
  return data;
}

}  // namespace

TEST_SUITE("margin") {

TEST_CASE("four collinear points: every field and extremal pair") {
  const MarginReport rep = lipmr::margin_report(two_vs_two(), MetricMatrix::identity(1));
  CHECK(rep.margin == 4.0);
  CHECK(rep.diam_all == 36.0);
  CHECK(rep.diam_pos == 4.0);
  CHECK(rep.diam_neg == 4.0);
  CHECK(rep.ratio_diam == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(rep.ratio_intra == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rep.l0 == 0.5);
  CHECK(rep.argmin_pair == std::pair<int, int>{1, 2});
  CHECK(rep.argmax_all == std::pair<int, int>{0, 3});
  CHECK(rep.argmax_pos == std::pair<int, int>{0, 1});
  CHECK(rep.argmax_neg == std::pair<int, int>{2, 3});
}

TEST_CASE("one point per class: zero diameters, infinite intra ratio") {
  LabeledDataset data;
  data.x.resize(2, 1);
  data.x << 0.0, 2.0;
  data.y.resize(2);
  data.y << 1, -1;
  const MarginReport rep = lipmr::margin_report(data, MetricMatrix::identity(1));
  CHECK(rep.margin == 4.0);
  CHECK(rep.diam_all == 4.0);
  CHECK(rep.diam_pos == 0.0);
  CHECK(rep.diam_neg == 0.0);
  CHECK(rep.ratio_diam == 1.0);
  CHECK(rep.ratio_intra == kInf);
  CHECK(rep.argmax_pos == std::pair<int, int>{-1, -1});
  CHECK(rep.argmax_neg == std::pair<int, int>{-1, -1});
}

TEST_CASE("coincident opposite-label points: zero margin conventions") {
  LabeledDataset data;
  data.x.resize(2, 1);
  data.x << 1.0, 1.0;
  data.y.resize(2);
  data.y << 1, -1;
  const MarginReport rep = lipmr::margin_report(data, MetricMatrix::identity(1));
  CHECK(rep.margin == 0.0);
  CHECK(rep.ratio_diam == 0.0);
  CHECK(rep.ratio_intra == 0.0);
  CHECK(rep.l0 == kInf);

  // With spread added the zero margin stays and ratios stay 0.
  LabeledDataset wide;
  wide.x.resize(3, 1);
  wide.x << 1.0, 1.0, 5.0;
  wide.y.resize(3);
  wide.y << 1, -1, -1;
  const MarginReport rep2 = lipmr::margin_report(wide, MetricMatrix::identity(1));
  CHECK(rep2.margin == 0.0);
  CHECK(rep2.diam_all == 16.0);
  CHECK(rep2.ratio_diam == 0.0);
  CHECK(rep2.l0 == kInf);
}

TEST_CASE("input validation") {
  LabeledDataset one;
  one.x.resize(1, 1);
  one.x << 0.0;
  one.y.resize(1);
  one.y << 1;
  CHECK_THROWS_AS(lipmr::margin_report(one, MetricMatrix::identity(1)), lipmr::SingleClass);

  LabeledDataset mono;
  mono.x.resize(3, 1);
  mono.x << 0.0, 1.0, 2.0;
  mono.y.resize(3);
  mono.y << 1, 1, 1;
  CHECK_THROWS_AS(lipmr::margin_report(mono, MetricMatrix::identity(1)), lipmr::SingleClass);

  CHECK_THROWS_AS(lipmr::margin_report(two_vs_two(), MetricMatrix::identity(3)),
                  lipmr::DimensionMismatch);
}

TEST_CASE("nearly indefinite metric is rejected when a pair exposes it") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(1, 1) = -5e-9;  // passes construction, fails on far-apart pairs
  const MetricMatrix metric = MetricMatrix::from_dense(m);
  LabeledDataset data;
  data.x.resize(2, 2);
  data.x << 0.0, 0.0, 0.0, 10.0;
  data.y.resize(2);
  data.y << 1, -1;
  CHECK_THROWS_AS(lipmr::margin_report(data, metric), lipmr::NotPsd);
}

TEST_CASE("local report remaps indices to the parent dataset") {
  const LabeledDataset data = two_vs_two();
  const std::vector<int> idx = {1, 2, 3};
  const MarginReport rep = lipmr::local_margin_report(data, idx, MetricMatrix::identity(1));
  CHECK(rep.margin == 4.0);
  CHECK(rep.diam_pos == 0.0);
  CHECK(rep.diam_neg == 4.0);
  CHECK(rep.diam_all == 16.0);
  CHECK(rep.ratio_intra == 1.0);
  CHECK(rep.argmin_pair == std::pair<int, int>{1, 2});
  CHECK(rep.argmax_all == std::pair<int, int>{1, 3});
  CHECK(rep.argmax_pos == std::pair<int, int>{-1, -1});
  CHECK(rep.argmax_neg == std::pair<int, int>{2, 3});

  std::vector<int> full = {0, 1, 2, 3};
  const MarginReport whole = lipmr::local_margin_report(data, full, MetricMatrix::identity(1));
  const MarginReport direct = lipmr::margin_report(data, MetricMatrix::identity(1));
  CHECK(whole.margin == direct.margin);
  CHECK(whole.argmin_pair == direct.argmin_pair);
  CHECK(whole.argmax_all == direct.argmax_all);

  const std::vector<int> single_class = {0, 1};
  CHECK_THROWS_AS(lipmr::local_margin_report(data, single_class, MetricMatrix::identity(1)),
                  lipmr::SingleClass);
}

TEST_CASE("lipschitz constant hand values") {
  LabeledDataset pair;
  pair.x.resize(2, 2);
  pair.x << 0.0, 0.0, 1.0, 0.0;
  pair.y.resize(2);
  pair.y << 1, -1;
  CHECK(lipmr::lipschitz_l0(pair, MetricMatrix::identity(2)) == 2.0);

  // Unit-square XOR corners: smallest cross-class squared distance is 1.
  LabeledDataset xor4;
  xor4.x.resize(4, 2);
  xor4.x << 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0;
  xor4.y.resize(4);
  xor4.y << 1, 1, -1, -1;
  CHECK(lipmr::lipschitz_l0(xor4, MetricMatrix::identity(2)) == 2.0);

  LabeledDataset dup;
  dup.x.resize(2, 1);
  dup.x << 3.0, 3.0;
  dup.y.resize(2);
  dup.y << 1, -1;
  CHECK(lipmr::lipschitz_l0(dup, MetricMatrix::identity(1)) == kInf);
}

TEST_CASE("report matches brute-force enumeration on random data") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto data = testutil::random_dataset(3 + static_cast<int>(seed) * 7, 3, 1000 + seed);
    const auto metric = testutil::random_metric(3, 2000 + seed);
    const MarginReport rep = lipmr::margin_report(data, metric);
    const testutil::BruteMargin brute = testutil::brute_margin(data, metric);
    CHECK(rep.margin == brute.margin);
    CHECK(rep.argmin_pair == brute.argmin);
    CHECK(rep.diam_all == brute.diam_all);
    CHECK(rep.argmax_all == brute.argmax_all);
    CHECK(rep.diam_pos == brute.diam_pos);
    CHECK(rep.argmax_pos == brute.argmax_pos);
    CHECK(rep.diam_neg == brute.diam_neg);
    CHECK(rep.argmax_neg == brute.argmax_neg);
    CHECK(rep.l0 == 2.0 / rep.margin);
    CHECK(rep.margin * rep.l0 == doctest::Approx(2.0).epsilon(1e-15));
  }
}

TEST_CASE("root distances satisfy the diameter decomposition") {
  // sqrt of the squared form is a genuine pseudometric, so the full diameter
  // is at most margin + both intra-class diameters in root units:
  // sqrt(diam_all) <= sqrt(diam_pos) + sqrt(diam_neg) + sqrt(margin).
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 4 + static_cast<int>(seed % 17);
    const int p = 1 + static_cast<int>(seed % 4);
    const auto data = testutil::random_dataset(n, p, 3000 + seed);
    const auto metric = testutil::random_metric(p, 4000 + seed);
    const MarginReport rep = lipmr::margin_report(data, metric);
    const double lhs = std::sqrt(rep.diam_all);
    const double rhs = std::sqrt(rep.diam_pos) + std::sqrt(rep.diam_neg) + std::sqrt(rep.margin);
    CHECK(lhs <= rhs + 1e-9);
    ++checked;
  }
  CHECK(checked == 200);

  // Equality case: collinear points where the extremes span everything.
  const MarginReport rep = lipmr::margin_report(two_vs_two(), MetricMatrix::identity(1));
  CHECK(std::sqrt(rep.diam_all) ==
        doctest::Approx(std::sqrt(rep.diam_pos) + std::sqrt(rep.diam_neg) + std::sqrt(rep.margin))
            .epsilon(1e-12));
}

TEST_CASE("separation dominates twice the hyperplane clearance") {
  // For a linear classifier with every point at functional margin >= 1, the
  // class separation is at least twice the closest point-to-plane distance.
  // Plain Euclidean (unsquared) units.
  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng = testutil::seeded_rng(5000 + seed);
    const int p = 2 + static_cast<int>(seed % 3);
    Eigen::VectorXd w(p);
    for (int c = 0; c < p; ++c) w[c] = testutil::uniform(rng, -1.0, 1.0);
    if (w.norm() < 1e-3) continue;
    const double b = testutil::uniform(rng, -0.5, 0.5);

    std::vector<Eigen::VectorXd> pts;
    std::vector<int> labels;
    double min_abs_f = kInf;
    for (int i = 0; i < 60; ++i) {
      Eigen::VectorXd x(p);
      for (int c = 0; c < p; ++c) x[c] = testutil::uniform(rng, -6.0, 6.0);
      const double f = w.dot(x) + b;
      if (std::abs(f) < 1.0) continue;  // keep functional margin >= 1
      pts.push_back(x);
      labels.push_back(f > 0 ? 1 : -1);
      min_abs_f = std::min(min_abs_f, std::abs(f));
    }
    const bool has_pos = std::count(labels.begin(), labels.end(), 1) > 0;
    const bool has_neg = std::count(labels.begin(), labels.end(), -1) > 0;
    if (!has_pos || !has_neg) continue;

    LabeledDataset data;
    data.x.resize(static_cast<int>(pts.size()), p);
    data.y.resize(static_cast<int>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      data.x.row(static_cast<int>(i)) = pts[i].transpose();
      data.y[static_cast<int>(i)] = labels[i];
    }
    const MarginReport rep = lipmr::margin_report(data, MetricMatrix::identity(p));
    const double separation = std::sqrt(rep.margin);
    const double clearance = min_abs_f / w.norm();
    CHECK(separation >= 2.0 * clearance - 1e-9);
    ++accepted;
  }
  CHECK(accepted >= 25);
}

TEST_CASE("distances scale linearly with the metric") {
  std::mt19937_64 rng = testutil::seeded_rng(6000);
  for (int trial = 0; trial < 25; ++trial) {
    const int p = 1 + trial % 4;
    const MetricMatrix base = testutil::random_metric(p, 6100 + static_cast<std::uint64_t>(trial));
    const double c = trial == 0 ? 0.0 : std::pow(10.0, testutil::uniform(rng, -3.0, 3.0));
    const MetricMatrix scaled = base.scaled(c);
    Eigen::VectorXd x(p), y(p);
    for (int i = 0; i < p; ++i) {
      x[i] = testutil::uniform(rng, -5.0, 5.0);
      y[i] = testutil::uniform(rng, -5.0, 5.0);
    }
    const double d0 = lipmr::mahalanobis_distance(base, x, y);
    const double d1 = lipmr::mahalanobis_distance(scaled, x, y);
    CHECK(std::abs(d1 - c * d0) <= 1e-10 * std::max(1.0, std::abs(c * d0)));
  }
}

TEST_CASE("report serializes ratios with the infinity convention") {
  LabeledDataset data;
  data.x.resize(2, 1);
  data.x << 0.0, 2.0;
  data.y.resize(2);
  data.y << 1, -1;
  const lipmr::json doc = lipmr::margin_report(data, MetricMatrix::identity(1)).to_json();
  CHECK(doc["margin"] == 4.0);
  CHECK(doc["ratio_intra"] == "inf");
  CHECK(doc["ratio_diam"] == 1.0);
  CHECK(doc["argmin_pair"][0] == 0);
  CHECK(doc["argmin_pair"][1] == 1);
  CHECK(doc["argmax_pos"][0] == -1);
}

TEST_CASE("serial and parallel backends produce identical reports") {
  omp_set_num_threads(4);
  const auto data = testutil::random_dataset(60, 3, 7000);
  const auto metric = testutil::random_metric(3, 7001);
  const MarginReport s = lipmr::margin_report(data, metric, lipmr::kernels::Backend::serial);
  const MarginReport p = lipmr::margin_report(data, metric, lipmr::kernels::Backend::parallel);
  CHECK(s.margin == p.margin);
  CHECK(s.diam_all == p.diam_all);
  CHECK(s.diam_pos == p.diam_pos);
  CHECK(s.diam_neg == p.diam_neg);
  CHECK(s.argmin_pair == p.argmin_pair);
  CHECK(s.argmax_all == p.argmax_all);
  CHECK(s.argmax_pos == p.argmax_pos);
  CHECK(s.argmax_neg == p.argmax_neg);
}

}  // TEST_SUITE
