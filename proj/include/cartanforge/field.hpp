#pragma once

#include <memory>
#include <mutex>

#include "cartanforge/jet.hpp"

namespace cartanforge {

/// A node of the scalar-field evaluation graph. Nodes are immutable and
/// shared; each keeps a one-slot jet cache (last point, highest order asked
/// for there) behind a mutex so repeated evaluation of a point-major sweep
/// over many derived fields reuses common subexpressions.
class FieldNode {
 public:
  virtual ~FieldNode() = default;

  Jet eval(const Point& p, int order) const;
  virtual double value(const Point& p) const;

 protected:
  virtual Jet compute(const Point& p, int order) const = 0;

 private:
  mutable std::mutex mu_;
  mutable bool cached_ = false;
  mutable Point cached_point_{};
  mutable Jet cached_jet_{0};
};

using NodePtr = std::shared_ptr<const FieldNode>;

/// Smooth scalar function on the chart, evaluable together with its exact
/// partial derivatives to any order the jet engine supports.
class ScalarField {
 public:
  ScalarField();             // the zero field
  ScalarField(double v);     // constant field (implicit on purpose)
  explicit ScalarField(NodePtr node);

  static ScalarField constant(double v);
  static ScalarField coordinate(int axis);  // c1, c2 or c3

  double value(const Point& p) const;
  /// Taylor jet at p; domain errors surface as EvalError tagged with p.
  Jet jet(const Point& p, int order) const;

  const NodePtr& node() const { return node_; }
  bool is_constant(double* out = nullptr) const;

  ScalarField operator-() const;

 private:
  NodePtr node_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);

ScalarField exp(const ScalarField& f);
ScalarField log(const ScalarField& f);
ScalarField sqrt(const ScalarField& f);
ScalarField sin(const ScalarField& f);
ScalarField cos(const ScalarField& f);
ScalarField tan(const ScalarField& f);
ScalarField abs(const ScalarField& f);
ScalarField powi(const ScalarField& f, long long n);
ScalarField pow(const ScalarField& f, double p);
ScalarField pow(const ScalarField& a, const ScalarField& b);

/// Exact partial derivative along a chart axis (1..3).
ScalarField partial(const ScalarField& f, int axis);

}  // namespace cartanforge
