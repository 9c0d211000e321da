#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartanforge {

/// A point of the 3-dimensional chart. Axes are addressed 1..3 throughout
/// the public API; the chart variables are c1, c2, c3.
struct Point {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator[](int axis) const {
    switch (axis) {
      case 1: return c1;
      case 2: return c2;
      case 3: return c3;
    }
    throw std::out_of_range("Point axis must be 1, 2 or 3");
  }

  bool operator==(const Point&) const = default;
};

std::string format_point(const Point& p);

/// Raised when an evaluation leaves the mathematical domain of an operation
/// (log of a nonpositive value, division by zero, singular coframe matrix,
/// nonfinite intermediate). Never reported as a silent NaN.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
  EvalError(const std::string& msg, const Point& p)
      : std::runtime_error(msg + " at " + format_point(p)),
        has_point_(true),
        at_(p) {}

  bool has_point() const { return has_point_; }
  const Point& at() const { return at_; }

 private:
  bool has_point_ = false;
  Point at_{};
};

/// Truncated multivariate Taylor expansion in the three chart variables.
/// Coefficients are Taylor coefficients (derivative / factorials), stored in
/// graded order so that truncation to a lower order is a prefix copy.
class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  explicit Jet(int order);
  static Jet constant(double v, int order);
  /// Seed for a chart variable: value v, unit first derivative along axis.
  static Jet variable(double v, int axis, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  /// First-derivative coefficient along axis (1..3); requires order >= 1.
  double first(int axis) const;
  /// Taylor coefficient for the multi-index (i, j, k).
  double coeff(int i, int j, int k) const;
  /// Mixed partial derivative d^{i+j+k} f / dc1^i dc2^j dc3^k.
  double partial_value(int i, int j, int k) const;

  /// Number of coefficients stored by a jet of the given order.
  static int coeff_count(int order);

  Jet truncated(int order) const;
  /// Jet of the partial derivative along axis (1..3); drops one order.
  Jet derivative(int axis) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double v);
  Jet& operator-=(double v);
  Jet& operator*=(double v);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, double b);
  friend Jet operator/(double a, const Jet& b);

  friend Jet exp(const Jet& u);
  friend Jet log(const Jet& u);
  friend Jet sqrt(const Jet& u);
  friend Jet sin(const Jet& u);
  friend Jet cos(const Jet& u);
  friend Jet tan(const Jet& u);
  friend Jet abs(const Jet& u);
  friend Jet reciprocal(const Jet& u);
  /// Integer power by repeated squaring; valid for any base sign.
  friend Jet powi(const Jet& u, long long n);
  /// Real power; integer-valued exponents route to powi, otherwise the base
  /// must be positive.
  friend Jet pow(const Jet& u, double p);

  /// Evaluates sum_k t[k] (u - u(0))^k, the composition with a univariate
  /// series expanded at the value of u. t must have order()+1 entries.
  friend Jet compose_series(const std::vector<double>& t, const Jet& u);

 private:
  int order_;
  std::vector<double> c_;

  void check_finite(const char* op) const;
};

}  // namespace cartanforge
