#include "cartanforge/jet.hpp"

#include <cmath>
#include <cstdio>

namespace cartanforge {

std::string format_point(const Point& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.12g, %.12g, %.12g)", p.c1, p.c2, p.c3);
  return buf;
}

namespace {

struct Tables {
  // Multi-indices in graded order; within a degree, i descends, then j.
  std::vector<std::array<int, 3>> mindex;
  // offset[d] = position of the first multi-index of total degree d.
  std::array<int, Jet::kMaxOrder + 2> offset{};
  // index_of[i][j][k] for i+j+k <= kMaxOrder.
  int index_of[Jet::kMaxOrder + 1][Jet::kMaxOrder + 1][Jet::kMaxOrder + 1]{};

  Tables() {
    int pos = 0;
    for (int d = 0; d <= Jet::kMaxOrder; ++d) {
      offset[d] = pos;
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) {
          int k = d - i - j;
          mindex.push_back({i, j, k});
          index_of[i][j][k] = pos++;
        }
    }
    offset[Jet::kMaxOrder + 1] = pos;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void require_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder)
    throw std::out_of_range("jet order out of range: " + std::to_string(order));
}

}  // namespace

Jet::Jet(int order) : order_(order) {
  require_order(order);
  c_.assign(static_cast<size_t>(coeff_count(order)), 0.0);
}

int Jet::coeff_count(int order) {
  require_order(order);
  return tables().offset[order + 1];
}

Jet Jet::constant(double v, int order) {
  Jet j(order);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(double v, int axis, int order) {
  Jet j(order);
  j.c_[0] = v;
  if (order >= 1) {
    switch (axis) {
      case 1: j.c_[tables().index_of[1][0][0]] = 1.0; break;
      case 2: j.c_[tables().index_of[0][1][0]] = 1.0; break;
      case 3: j.c_[tables().index_of[0][0][1]] = 1.0; break;
      default: throw std::out_of_range("jet variable axis must be 1, 2 or 3");
    }
  }
  return j;
}

double Jet::first(int axis) const {
  if (order_ < 1) throw std::logic_error("jet order 0 has no first derivative");
  switch (axis) {
    case 1: return c_[tables().index_of[1][0][0]];
    case 2: return c_[tables().index_of[0][1][0]];
    case 3: return c_[tables().index_of[0][0][1]];
  }
  throw std::out_of_range("jet axis must be 1, 2 or 3");
}

double Jet::coeff(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i + j + k > order_)
    throw std::out_of_range("jet coefficient index exceeds order");
  return c_[tables().index_of[i][j][k]];
}

double Jet::partial_value(int i, int j, int k) const {
  double f = 1.0;
  for (int n = 2; n <= i; ++n) f *= n;
  for (int n = 2; n <= j; ++n) f *= n;
  for (int n = 2; n <= k; ++n) f *= n;
  return coeff(i, j, k) * f;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) {
    if (order == order_) return *this;
    throw std::logic_error("jet truncation cannot raise the order");
  }
  Jet out(order);
  for (size_t n = 0; n < out.c_.size(); ++n) out.c_[n] = c_[n];
  return out;
}

Jet Jet::derivative(int axis) const {
  if (order_ < 1) throw std::logic_error("cannot differentiate an order-0 jet");
  if (axis < 1 || axis > 3) throw std::out_of_range("jet axis must be 1, 2 or 3");
  const Tables& t = tables();
  Jet out(order_ - 1);
  for (int n = 0; n < coeff_count(order_ - 1); ++n) {
    std::array<int, 3> m = t.mindex[static_cast<size_t>(n)];
    std::array<int, 3> up = m;
    ++up[axis - 1];
    out.c_[static_cast<size_t>(n)] =
        c_[static_cast<size_t>(t.index_of[up[0]][up[1]][up[2]])] * (m[axis - 1] + 1);
  }
  return out;
}

void Jet::check_finite(const char* op) const {
  for (double v : c_)
    if (!std::isfinite(v))
      throw EvalError(std::string("nonfinite result in ") + op);
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
  return *this;
}

Jet& Jet::operator+=(double v) {
  c_[0] += v;
  return *this;
}

Jet& Jet::operator-=(double v) {
  c_[0] -= v;
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (double& c : c_) c *= v;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const Tables& t = tables();
  const int order = std::min(a.order_, b.order_);
  Jet out(order);
  for (int da = 0; da <= order; ++da) {
    for (int ia = t.offset[da]; ia < t.offset[da + 1]; ++ia) {
      const double va = a.c_[static_cast<size_t>(ia)];
      if (va == 0.0) continue;
      const auto& ma = t.mindex[static_cast<size_t>(ia)];
      for (int db = 0; da + db <= order; ++db) {
        for (int ib = t.offset[db]; ib < t.offset[db + 1]; ++ib) {
          const double vb = b.c_[static_cast<size_t>(ib)];
          if (vb == 0.0) continue;
          const auto& mb = t.mindex[static_cast<size_t>(ib)];
          out.c_[static_cast<size_t>(
              t.index_of[ma[0] + mb[0]][ma[1] + mb[1]][ma[2] + mb[2]])] += va * vb;
        }
      }
    }
  }
  return out;
}

Jet compose_series(const std::vector<double>& t, const Jet& u) {
  const int order = u.order();
  if (static_cast<int>(t.size()) != order + 1)
    throw std::logic_error("series length must be order + 1");
  Jet w = u;
  w.c_[0] = 0.0;
  Jet r = Jet::constant(t[static_cast<size_t>(order)], order);
  for (int k = order - 1; k >= 0; --k) {
    r = r * w;
    r.c_[0] += t[static_cast<size_t>(k)];
  }
  return r;
}

Jet reciprocal(const Jet& u) {
  const double u0 = u.value();
  if (u0 == 0.0) throw EvalError("division by zero");
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  double c = 1.0 / u0;
  for (int k = 0; k <= u.order(); ++k) {
    t[static_cast<size_t>(k)] = c;
    c = -c / u0;
  }
  Jet out = compose_series(t, u);
  out.check_finite("reciprocal");
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet operator/(Jet a, double b) {
  if (b == 0.0) throw EvalError("division by zero");
  return a *= (1.0 / b);
}

Jet operator/(double a, const Jet& b) { return reciprocal(b) * a; }

Jet exp(const Jet& u) {
  const double e0 = std::exp(u.value());
  if (!std::isfinite(e0)) throw EvalError("exp overflow");
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  double c = e0;
  for (int k = 0; k <= u.order(); ++k) {
    t[static_cast<size_t>(k)] = c;
    c /= (k + 1);
  }
  Jet out = compose_series(t, u);
  out.check_finite("exp");
  return out;
}

Jet log(const Jet& u) {
  const double u0 = u.value();
  if (!(u0 > 0.0)) throw EvalError("log of a nonpositive value");
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  t[0] = std::log(u0);
  // log(u0 + x) = log u0 + sum (-1)^{k+1} x^k / (k u0^k)
  double p = 1.0;
  for (int k = 1; k <= u.order(); ++k) {
    p /= u0;
    t[static_cast<size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) * p / k;
  }
  Jet out = compose_series(t, u);
  out.check_finite("log");
  return out;
}

Jet sqrt(const Jet& u) {
  const double u0 = u.value();
  if (u0 < 0.0) throw EvalError("sqrt of a negative value");
  if (u0 == 0.0) {
    if (u.order() == 0) return Jet::constant(0.0, 0);
    throw EvalError("sqrt is not differentiable at zero");
  }
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  double c = std::sqrt(u0);
  for (int k = 0; k <= u.order(); ++k) {
    t[static_cast<size_t>(k)] = c;
    c *= (0.5 - k) / ((k + 1) * u0);
  }
  Jet out = compose_series(t, u);
  out.check_finite("sqrt");
  return out;
}

Jet sin(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  double f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    if (k > 1) f *= k;
    t[static_cast<size_t>(k)] = cycle[k % 4] / f;
  }
  return compose_series(t, u);
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  double f = 1.0;
  for (int k = 0; k <= u.order(); ++k) {
    if (k > 1) f *= k;
    t[static_cast<size_t>(k)] = cycle[k % 4] / f;
  }
  return compose_series(t, u);
}

Jet tan(const Jet& u) {
  Jet c = cos(u);
  if (c.value() == 0.0) throw EvalError("tan at a pole");
  return sin(u) / c;
}

Jet abs(const Jet& u) {
  const double u0 = u.value();
  if (u0 > 0.0) return u;
  if (u0 < 0.0) return -u;
  if (u.order() == 0) return Jet::constant(0.0, 0);
  throw EvalError("abs is not differentiable at zero");
}

Jet powi(const Jet& u, long long n) {
  if (n < 0) return reciprocal(powi(u, -n));
  Jet result = Jet::constant(1.0, u.order());
  Jet base = u;
  long long e = n;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  result.check_finite("powi");
  return result;
}

Jet pow(const Jet& u, double p) {
  if (p == static_cast<double>(static_cast<long long>(p)) && std::abs(p) <= 1e9)
    return powi(u, static_cast<long long>(p));
  const double u0 = u.value();
  if (!(u0 > 0.0))
    throw EvalError("pow with a nonpositive base requires an integer exponent");
  std::vector<double> t(static_cast<size_t>(u.order()) + 1);
  double c = std::pow(u0, p);
  for (int k = 0; k <= u.order(); ++k) {
    t[static_cast<size_t>(k)] = c;
    c *= (p - k) / ((k + 1) * u0);
  }
  Jet out = compose_series(t, u);
  out.check_finite("pow");
  return out;
}

}  // namespace cartanforge
