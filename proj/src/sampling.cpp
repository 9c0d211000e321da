#include "cartanforge/sampling.hpp"

#include <cmath>

namespace cartanforge {

std::vector<Point> Box::grid(int n) const {
  if (n < 1) throw std::invalid_argument("grid needs at least one point per axis");
  auto coord = [n](double a, double b, int i) {
    if (n == 1) return 0.5 * (a + b);
    return a + (b - a) * static_cast<double>(i) / (n - 1);
  };
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        pts.push_back({coord(lo[0], hi[0], i), coord(lo[1], hi[1], j),
                       coord(lo[2], hi[2], k)});
  return pts;
}

std::vector<Point> Box::random(int count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return random(count, rng);
}

std::vector<Point> Box::random(int count, std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u1(lo[0], hi[0]);
  std::uniform_real_distribution<double> u2(lo[1], hi[1]);
  std::uniform_real_distribution<double> u3(lo[2], hi[2]);
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double a = u1(rng);
    const double b = u2(rng);
    const double c = u3(rng);
    pts.push_back({a, b, c});
  }
  return pts;
}

void FieldStat::add(const Point& p, double v) {
  const double a = std::abs(v);
  if (a > sup_abs || count == 0) {
    sup_abs = a;
    argmax = p;
  }
  mean_abs = (mean_abs * static_cast<double>(count) + a) /
             static_cast<double>(count + 1);
  if (v < min_value) min_value = v;
  if (v > max_value) max_value = v;
  ++count;
}

std::vector<FieldStat> evaluate_stats(const std::vector<ScalarField>& fields,
                                      const std::vector<Point>& pts) {
  std::vector<FieldStat> stats(fields.size());
  for (const Point& p : pts)
    for (size_t i = 0; i < fields.size(); ++i)
      stats[i].add(p, fields[i].value(p));
  return stats;
}

FieldStat evaluate_stat(const ScalarField& field, const std::vector<Point>& pts) {
  return evaluate_stats({field}, pts)[0];
}

}  // namespace cartanforge
