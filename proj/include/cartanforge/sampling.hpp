#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cartanforge/field.hpp"

namespace cartanforge {

/// Axis-aligned sample domain.
struct Box {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};

  /// Regular grid with n points per axis, endpoints included.
  std::vector<Point> grid(int n) const;
  /// Uniform points from a seeded generator.
  std::vector<Point> random(int count, std::uint64_t seed) const;
  std::vector<Point> random(int count, std::mt19937_64& rng) const;
};

/// Absolute-value and range statistics of a field over a point sample.
struct FieldStat {
  double sup_abs = 0.0;
  double mean_abs = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  double max_value = -std::numeric_limits<double>::infinity();
  Point argmax{};
  std::size_t count = 0;

  double spread() const { return max_value - min_value; }
  void add(const Point& p, double v);
};

/// Evaluates every field at every point, point-major so shared subgraphs hit
/// their caches, and returns one statistic per field.
std::vector<FieldStat> evaluate_stats(const std::vector<ScalarField>& fields,
                                      const std::vector<Point>& pts);

FieldStat evaluate_stat(const ScalarField& field, const std::vector<Point>& pts);

}  // namespace cartanforge
