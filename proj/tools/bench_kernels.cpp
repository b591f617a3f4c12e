#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipmr/kernels.hpp"

// Times each kernel on both backends and checks that the outputs match
// bitwise; the fixed-block reductions make that an equality, not a tolerance.
namespace {

using lipmr::MatrixRM;
namespace kn = lipmr::kernels;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Timing {
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
  bool equal = false;
};

template <typename F>
double best_of(int reps, F&& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool bitwise_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void report(const char* name, const Timing& t) {
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n", name,
              t.serial_ms, t.parallel_ms, t.serial_ms / t.parallel_ms,
              t.equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int n_points = 1500;
  int n_rows = 200000;
  int p = 8;
  int reps = 3;
  CLI::App app{"kernel backend comparison"};
  app.add_option("--points", n_points, "points for the pair scan");
  app.add_option("--rows", n_rows, "rows for the product kernels");
  app.add_option("--p", p, "feature dimension");
  app.add_option("--reps", reps, "repetitions (best-of)");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(12345);
  MatrixRM points(n_points, p);
  Eigen::VectorXi labels(n_points);
  for (int i = 0; i < n_points; ++i) {
    labels[i] = (rng() & 1) ? 1 : -1;
    for (int c = 0; c < p; ++c) points(i, c) = 2.0 * uniform01(rng) - 1.0;
  }
  MatrixRM diffs(n_rows, p);
  Eigen::VectorXd weights(n_rows);
  for (int r = 0; r < n_rows; ++r) {
    weights[r] = uniform01(rng);
    for (int c = 0; c < p; ++c) diffs(r, c) = 2.0 * uniform01(rng) - 1.0;
  }
  Eigen::MatrixXd metric = Eigen::MatrixXd::Identity(p, p);
  for (int c = 0; c < p; ++c) metric(c, c) = 0.5 + uniform01(rng);

  bool all_equal = true;

  {
    kn::PairExtrema s, o;
    Timing t;
    t.serial_ms =
        best_of(reps, [&] { s = kn::pair_extrema(points, labels, metric, kn::Backend::serial); });
    t.parallel_ms =
        best_of(reps, [&] { o = kn::pair_extrema(points, labels, metric, kn::Backend::parallel); });
    t.equal = s.min_cross == o.min_cross && s.min_cross_i == o.min_cross_i &&
              s.min_cross_j == o.min_cross_j && s.max_all == o.max_all &&
              s.max_all_i == o.max_all_i && s.max_all_j == o.max_all_j &&
              s.max_pos == o.max_pos && s.max_neg == o.max_neg && s.min_raw == o.min_raw;
    report("pair_extrema", t);
    all_equal = all_equal && t.equal;
  }
  {
    Eigen::VectorXd s, o;
    Timing t;
    t.serial_ms = best_of(reps, [&] { kn::row_quadforms(diffs, metric, s, kn::Backend::serial); });
    t.parallel_ms =
        best_of(reps, [&] { kn::row_quadforms(diffs, metric, o, kn::Backend::parallel); });
    t.equal = bitwise_equal(s, o);
    report("row_quadforms", t);
    all_equal = all_equal && t.equal;
  }
  {
    Eigen::VectorXd s, o;
    Timing t;
    t.serial_ms =
        best_of(reps, [&] { kn::weighted_outer_sum(diffs, weights, s, kn::Backend::serial); });
    t.parallel_ms =
        best_of(reps, [&] { kn::weighted_outer_sum(diffs, weights, o, kn::Backend::parallel); });
    t.equal = bitwise_equal(s, o);
    report("weighted_outer_sum", t);
    all_equal = all_equal && t.equal;
  }
  {
    Eigen::MatrixXd s, o;
    Timing t;
    t.serial_ms = best_of(reps, [&] { kn::outer_gram(diffs, s, kn::Backend::serial); });
    t.parallel_ms = best_of(reps, [&] { kn::outer_gram(diffs, o, kn::Backend::parallel); });
    t.equal = s.rows() == o.rows() && s.cols() == o.cols();
    if (t.equal) {
      for (Eigen::Index i = 0; i < s.size() && t.equal; ++i) t.equal = s.data()[i] == o.data()[i];
    }
    report("outer_gram", t);
    all_equal = all_equal && t.equal;
  }
  {
    double s = 0.0, o = 0.0;
    Timing t;
    t.serial_ms =
        best_of(reps, [&] { s = kn::shifted_hinge_sum(weights, 0.25, kn::Backend::serial); });
    t.parallel_ms =
        best_of(reps, [&] { o = kn::shifted_hinge_sum(weights, 0.25, kn::Backend::parallel); });
    t.equal = s == o;
    report("shifted_hinge_sum", t);
    all_equal = all_equal && t.equal;
  }
  {
    const int nq = std::max(1, n_points / 2);
    const MatrixRM queries = points.topRows(nq);
    Eigen::VectorXi ls, lo;
    std::vector<std::uint8_t> ts, to;
    Timing t;
    t.serial_ms = best_of(reps, [&] {
      kn::nn_predict_batch(points, labels, metric, queries, ls, ts, kn::Backend::serial);
    });
    t.parallel_ms = best_of(reps, [&] {
      kn::nn_predict_batch(points, labels, metric, queries, lo, to, kn::Backend::parallel);
    });
    t.equal = ls == lo && ts == to;
    report("nn_predict_batch", t);
    all_equal = all_equal && t.equal;
  }
  {
    const int nq = std::max(1, n_points / 2);
    const MatrixRM queries = points.topRows(nq);
    const Eigen::VectorXd values = labels.cast<double>();
    Eigen::VectorXd s, o;
    Timing t;
    t.serial_ms = best_of(reps, [&] {
      kn::extension_values_batch(points, values, 2.0, 0.5, metric, queries, s,
                                 kn::Backend::serial);
    });
    t.parallel_ms = best_of(reps, [&] {
      kn::extension_values_batch(points, values, 2.0, 0.5, metric, queries, o,
                                 kn::Backend::parallel);
    });
    t.equal = bitwise_equal(s, o);
    report("extension_values", t);
    all_equal = all_equal && t.equal;
  }

  if (!all_equal) {
    std::fprintf(stderr, "backend mismatch detected\n");
    return 1;
  }
  return 0;
}
