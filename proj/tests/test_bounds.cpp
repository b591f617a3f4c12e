#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "lipmr/bounds.hpp"
#include "lipmr/errors.hpp"
#include "lipmr/margin.hpp"

using lipmr::BoundResult;
using lipmr::MarginReport;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Literal transcription of the bound, written independently of the library
// so the two evaluations cross-check each other.
double bound_by_hand(double n, double k, double delta, double ddim, double c) {
  const double e = std::exp(1.0);
  const double d = std::pow(16.0 * c, ddim);
  const double inner = d * std::log2(34.0 * e * n / d) * std::log2(578.0 * n) +
                       std::log2(4.0 / delta);
  return k / n + std::sqrt(2.0 / n * inner);
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("dimension surrogate powers") {
  CHECK(lipmr::generalization_bound(1000, 0, 0.5, 1.0, 1.0 / 16.0).fat_dim == 1.0);
  CHECK(lipmr::generalization_bound(1000, 0, 0.5, 2.0, 1.0).fat_dim == 256.0);
  CHECK(lipmr::generalization_bound(1000000, 0, 0.5, 2.0, 4.0).fat_dim == 4096.0);
}

TEST_CASE("frozen reference value") {
  const BoundResult res = lipmr::generalization_bound(1000000, 0, 0.05, 1.0, 1.0);
  CHECK(res.fat_dim == 16.0);
  CHECK(!res.fat_overflow);
  CHECK(res.condition_met);
  CHECK(res.required_n == doctest::Approx(0.1731197370218552).epsilon(1e-12));
  CHECK(res.raw == doctest::Approx(0.14468473117522962).epsilon(1e-3));
  CHECK(res.raw ==
        doctest::Approx(bound_by_hand(1e6, 0.0, 0.05, 1.0, 1.0)).epsilon(1e-9));
  CHECK(res.clamped == res.raw);
  CHECK(!res.vacuous);
}

TEST_CASE("independent arithmetic agrees across the valid region") {
  std::mt19937_64 rng = testutil::seeded_rng(9000);
  for (int trial = 0; trial < 40; ++trial) {
    const long long n = 1000 + static_cast<long long>(testutil::uniform(rng, 0.0, 1e7));
    const long long k = static_cast<long long>(testutil::uniform01(rng) * 10.0);
    const double delta = testutil::uniform(rng, 0.01, 0.99);
    const double ddim = testutil::uniform(rng, 1.0, 2.5);
    const double c = testutil::uniform(rng, 0.5, 3.0);
    const BoundResult res = lipmr::generalization_bound(n, k, delta, ddim, c);
    if (!res.condition_met) continue;
    CHECK(res.raw == doctest::Approx(bound_by_hand(static_cast<double>(n),
                                                   static_cast<double>(k), delta, ddim, c))
                         .epsilon(1e-9));
    CHECK(res.clamped == std::min(res.raw, 1.0));
    CHECK(res.vacuous == (res.raw >= 1.0));
  }
}

TEST_CASE("all-wrong sample gives a vacuous bound clamped to 1") {
  const BoundResult res = lipmr::generalization_bound(500, 500, 0.05, 1.0, 1.0);
  CHECK(res.raw >= 1.0);
  CHECK(res.clamped == 1.0);
  CHECK(res.vacuous);
}

TEST_CASE("confidence near one leaves only the constant term") {
  // log2(4/delta) -> 2 as delta -> 1.
  const BoundResult near = lipmr::generalization_bound(1000000, 0, 1.0 - 1e-12, 1.0, 1.0 / 16.0);
  const double expect = std::sqrt(2.0 / 1e6 *
                                  (1.0 * std::log2(34.0 * std::exp(1.0) * 1e6) *
                                       std::log2(578.0 * 1e6) +
                                   2.0));
  CHECK(near.raw == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("validity condition gates the result") {
  // ddim 8 with C = 1: D = 16^8 = 4.3e9 needs n >= 4.6e7.
  const BoundResult res = lipmr::generalization_bound(1000, 0, 0.05, 8.0, 1.0);
  CHECK(!res.condition_met);
  CHECK(res.raw == kInf);
  CHECK(res.clamped == 1.0);
  CHECK(res.vacuous);
  CHECK(res.required_n > 1000.0);

  // Same D with enough samples passes.
  const BoundResult ok = lipmr::generalization_bound(50000000, 0, 0.05, 8.0, 1.0);
  CHECK(ok.condition_met);
  CHECK(std::isfinite(ok.raw));
}

TEST_CASE("overflowing dimension is reported, not hidden") {
  const BoundResult res = lipmr::generalization_bound(1000, 0, 0.05, 400.0, 100.0);
  CHECK(res.fat_overflow);
  CHECK(res.fat_dim == kInf);
  CHECK(!res.condition_met);
  CHECK(res.raw == kInf);
  CHECK(res.clamped == 1.0);
}

TEST_CASE("bound is monotone in each argument") {
  const BoundResult base = lipmr::generalization_bound(100000, 5, 0.05, 1.5, 2.0);
  REQUIRE(base.condition_met);
  CHECK(lipmr::generalization_bound(100000, 6, 0.05, 1.5, 2.0).raw > base.raw);
  CHECK(lipmr::generalization_bound(200000, 5, 0.05, 1.5, 2.0).raw < base.raw);
  CHECK(lipmr::generalization_bound(100000, 5, 0.01, 1.5, 2.0).raw > base.raw);
  CHECK(lipmr::generalization_bound(100000, 5, 0.05, 1.6, 2.0).raw > base.raw);
  CHECK(lipmr::generalization_bound(100000, 5, 0.05, 1.5, 2.5).raw > base.raw);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(lipmr::generalization_bound(0, 0, 0.05, 1.0, 1.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, -1, 0.05, 1.0, 1.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, 11, 0.05, 1.0, 1.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, 0, 0.0, 1.0, 1.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, 0, 1.0, 1.0, 1.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, 0, 0.05, 0.0, 1.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, 0, 0.05, 1.0, 0.0), lipmr::ConfigError);
  CHECK_THROWS_AS(lipmr::generalization_bound(10, 0, 0.05, 1.0, kInf), lipmr::ConfigError);
}

TEST_CASE("surrogates on the collinear four-point layout") {
  // Root-unit quantities: margin 2, diameters 2, 2, 6, constant L = 1.
  lipmr::LabeledDataset data;
  data.x.resize(4, 1);
  data.x << -3.0, -1.0, 1.0, 3.0;
  data.y.resize(4);
  data.y << 1, 1, -1, -1;
  const MarginReport rep = lipmr::margin_report(data, lipmr::MetricMatrix::identity(1));
  CHECK(lipmr::surrogate_c_diam(rep) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(lipmr::surrogate_c_intra(rep) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("surrogate properties on random samples") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 4 + static_cast<int>(seed % 13);
    const int p = 1 + static_cast<int>(seed % 3);
    const auto data = testutil::random_dataset(n, p, 9500 + seed);
    const auto metric = testutil::random_metric(p, 9600 + seed);
    const MarginReport rep = lipmr::margin_report(data, metric);
    const double diam_form = lipmr::surrogate_c_diam(rep);
    const double intra_form = lipmr::surrogate_c_intra(rep);
    CHECK(diam_form >= 2.0 - 1e-12);
    CHECK(intra_form >= 2.0);
    CHECK(diam_form <= intra_form + 1e-9);
  }
}

TEST_CASE("zero margin pushes the surrogates to infinity") {
  lipmr::LabeledDataset dup;
  dup.x.resize(3, 1);
  dup.x << 1.0, 1.0, 4.0;
  dup.y.resize(3);
  dup.y << 1, -1, -1;
  const MarginReport rep = lipmr::margin_report(dup, lipmr::MetricMatrix::identity(1));
  CHECK(lipmr::surrogate_c_diam(rep) == kInf);
  CHECK(lipmr::surrogate_c_intra(rep) == kInf);
  CHECK_THROWS_AS(lipmr::generalization_bound(100, 0, 0.05, 1.0, lipmr::surrogate_c_diam(rep)),
                  lipmr::ConfigError);
}

TEST_CASE("json exposes flags and infinities") {
  const BoundResult gated = lipmr::generalization_bound(1000, 0, 0.05, 8.0, 1.0);
  const lipmr::json doc = gated.to_json();
  CHECK(doc["condition_met"] == false);
  CHECK(doc["raw"] == "inf");
  CHECK(doc["clamped"] == 1.0);
  CHECK(doc["vacuous"] == true);

  const BoundResult fine = lipmr::generalization_bound(1000000, 0, 0.05, 1.0, 1.0);
  const lipmr::json ok = fine.to_json();
  CHECK(ok["condition_met"] == true);
  CHECK(ok["fat_dim"] == 16.0);
  CHECK(ok["vacuous"] == false);
}

}  // TEST_SUITE
