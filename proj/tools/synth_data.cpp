#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

// Generates the two bundled benchmark stand-ins. Each mimics the shape,
// class balance, and nearest-neighbor difficulty of a classic small tabular
// benchmark: an 862-point 2-feature interleaved-cluster set in sparse format
// and a 306-point 3-feature noisy clinical-style table in csv. Fixed seed,
// fixed constants; rerunning reproduces the committed files byte for byte.
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller, one value per call; avoids implementation-defined library
// distributions.
double normal(std::mt19937_64& rng) {
  double u = uniform01(rng);
  while (u == 0.0) u = uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      (std::numeric_limits<std::uint64_t>::max() % span);
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return lo + static_cast<int>(r % span);
}

struct Row2 {
  double x, y;
  int label;
};

void write_interleaved_clusters(const std::string& path) {
  std::mt19937_64 rng(0x4c49504d52ULL);  // stable generator stream
  std::vector<Row2> rows;

  // 4x4 grid of clusters, classes in a checkerboard, so every cluster's
  // nearest different-class cluster sits one grid step away.
  const double spacing = 4.0;
  const double sd = 0.55;
  std::vector<std::pair<int, int>> pos_cells, neg_cells;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      ((i + j) % 2 == 0 ? pos_cells : neg_cells).emplace_back(i, j);
    }
  }
  auto emit_cluster = [&](std::pair<int, int> cell, int count, int label) {
    for (int k = 0; k < count; ++k) {
      Row2 r;
      r.x = spacing * cell.first + sd * normal(rng);
      r.y = spacing * cell.second + sd * normal(rng);
      r.label = label;
      rows.push_back(r);
    }
  };
  // 304 + 3 = 307 positive, 552 + 3 = 555 negative.
  for (std::size_t c = 0; c < pos_cells.size(); ++c) emit_cluster(pos_cells[c], 38, 1);
  for (std::size_t c = 0; c < neg_cells.size(); ++c) emit_cluster(neg_cells[c], 69, -1);
  // Contested points near midpoints of opposite-class cluster pairs keep the
  // task just short of perfectly separable.
  for (int k = 0; k < 3; ++k) {
    Row2 r;
    r.x = spacing * k + spacing / 2.0 + 0.15 * normal(rng);
    r.y = spacing * (k % 2) + 0.15 * normal(rng);
    r.label = 1;
    rows.push_back(r);
    Row2 s;
    s.x = spacing * (k % 2) + 0.15 * normal(rng);
    s.y = spacing * k + spacing / 2.0 + 0.15 * normal(rng);
    s.label = -1;
    rows.push_back(s);
  }

  for (std::size_t i = rows.size() - 1; i >= 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i)));
    std::swap(rows[i], rows[j]);
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
  char buf[128];
  for (const Row2& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d 1:%.6f 2:%.6f\n", r.label, r.x, r.y);
    out << buf;
  }
  std::cout << path << ": " << rows.size() << " rows\n";
}

struct Row3 {
  int age, year, nodes;
  int label;  // raw 1 or 2
};

void write_clinical_table(const std::string& path) {
  std::mt19937_64 rng(0x4841424dULL);
  std::vector<Row3> rows;

  // Weak signal: only the node count separates the classes, and the
  // distributions overlap heavily. 225 rows of class 1, 81 of class 2.
  auto emit = [&](int count, int label) {
    for (int k = 0; k < count; ++k) {
      Row3 r;
      r.label = label;
      const double age_mean = label == 1 ? 52.0 : 53.7;
      const double age_sd = label == 1 ? 10.8 : 10.2;
      r.age = std::clamp(static_cast<int>(std::lround(age_mean + age_sd * normal(rng))), 30, 83);
      r.year = uniform_int(rng, 58, 69);
      const double zero_prob = label == 1 ? 0.58 : 0.30;
      if (uniform01(rng) < zero_prob) {
        r.nodes = 0;
      } else {
        const double scale = label == 1 ? 3.4 : 8.0;
        r.nodes = std::clamp(static_cast<int>(std::floor(-scale * std::log(1.0 - uniform01(rng)))),
                             0, 52);
      }
      rows.push_back(r);
    }
  };
  emit(225, 1);
  emit(81, 2);

  for (std::size_t i = rows.size() - 1; i >= 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i)));
    std::swap(rows[i], rows[j]);
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
  for (const Row3& r : rows) {
    out << r.age << "," << r.year << "," << r.nodes << "," << r.label << "\n";
  }
  std::cout << path << ": " << rows.size() << " rows\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  write_interleaved_clusters(dir + "/fourclass_synth.libsvm");
  write_clinical_table(dir + "/haberman_synth.csv");
  return 0;
}
