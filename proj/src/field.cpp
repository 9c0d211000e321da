#include "cartanforge/field.hpp"

#include <cmath>

namespace cartanforge {

Jet FieldNode::eval(const Point& p, int order) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (cached_ && cached_point_ == p && cached_jet_.order() >= order) {
      return cached_jet_.order() == order ? cached_jet_
                                          : cached_jet_.truncated(order);
    }
  }
  Jet j = compute(p, order);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!cached_ || !(cached_point_ == p) || cached_jet_.order() < j.order()) {
      cached_ = true;
      cached_point_ = p;
      cached_jet_ = j;
    }
  }
  return j;
}

double FieldNode::value(const Point& p) const { return eval(p, 0).value(); }

namespace {

class ConstNode final : public FieldNode {
 public:
  explicit ConstNode(double v) : v_(v) {}
  double value(const Point&) const override { return v_; }
  double constant_value() const { return v_; }

 protected:
  Jet compute(const Point&, int order) const override {
    return Jet::constant(v_, order);
  }

 private:
  double v_;
};

class CoordNode final : public FieldNode {
 public:
  explicit CoordNode(int axis) : axis_(axis) {
    if (axis < 1 || axis > 3)
      throw std::out_of_range("coordinate axis must be 1, 2 or 3");
  }
  double value(const Point& p) const override { return p[axis_]; }

 protected:
  Jet compute(const Point& p, int order) const override {
    return Jet::variable(p[axis_], axis_, order);
  }

 private:
  int axis_;
};

enum class UnaryOp { Neg, Exp, Log, Sqrt, Sin, Cos, Tan, Abs };

class UnaryNode final : public FieldNode {
 public:
  UnaryNode(UnaryOp op, NodePtr a) : op_(op), a_(std::move(a)) {}

  double value(const Point& p) const override {
    const double x = a_->value(p);
    switch (op_) {
      case UnaryOp::Neg: return -x;
      case UnaryOp::Exp: {
        const double e = std::exp(x);
        if (!std::isfinite(e)) throw EvalError("exp overflow");
        return e;
      }
      case UnaryOp::Log:
        if (!(x > 0.0)) throw EvalError("log of a nonpositive value");
        return std::log(x);
      case UnaryOp::Sqrt:
        if (x < 0.0) throw EvalError("sqrt of a negative value");
        return std::sqrt(x);
      case UnaryOp::Sin: return std::sin(x);
      case UnaryOp::Cos: return std::cos(x);
      case UnaryOp::Tan:
        if (std::cos(x) == 0.0) throw EvalError("tan at a pole");
        return std::tan(x);
      case UnaryOp::Abs: return std::abs(x);
    }
    throw std::logic_error("unhandled unary op");
  }

 protected:
  Jet compute(const Point& p, int order) const override {
    Jet x = a_->eval(p, order);
    switch (op_) {
      case UnaryOp::Neg: return -x;
      case UnaryOp::Exp: return exp(x);
      case UnaryOp::Log: return log(x);
      case UnaryOp::Sqrt: return sqrt(x);
      case UnaryOp::Sin: return sin(x);
      case UnaryOp::Cos: return cos(x);
      case UnaryOp::Tan: return tan(x);
      case UnaryOp::Abs: return abs(x);
    }
    throw std::logic_error("unhandled unary op");
  }

 private:
  UnaryOp op_;
  NodePtr a_;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class BinaryNode final : public FieldNode {
 public:
  BinaryNode(BinaryOp op, NodePtr a, NodePtr b)
      : op_(op), a_(std::move(a)), b_(std::move(b)) {}

  double value(const Point& p) const override {
    const double x = a_->value(p);
    const double y = b_->value(p);
    switch (op_) {
      case BinaryOp::Add: return x + y;
      case BinaryOp::Sub: return x - y;
      case BinaryOp::Mul: return x * y;
      case BinaryOp::Div:
        if (y == 0.0) throw EvalError("division by zero");
        return x / y;
      case BinaryOp::Pow: {
        if (!(x > 0.0))
          throw EvalError("pow with a nonpositive base requires an integer exponent");
        const double r = std::pow(x, y);
        if (!std::isfinite(r)) throw EvalError("pow overflow");
        return r;
      }
    }
    throw std::logic_error("unhandled binary op");
  }

 protected:
  Jet compute(const Point& p, int order) const override {
    Jet x = a_->eval(p, order);
    Jet y = b_->eval(p, order);
    switch (op_) {
      case BinaryOp::Add: return x + y;
      case BinaryOp::Sub: return x - y;
      case BinaryOp::Mul: return x * y;
      case BinaryOp::Div: return x / y;
      case BinaryOp::Pow:
        // General exponent: exp(y log x), positive base required. Integer
        // constant exponents never reach here (they become PowIntNode).
        return exp(y * log(x));
    }
    throw std::logic_error("unhandled binary op");
  }

 private:
  BinaryOp op_;
  NodePtr a_;
  NodePtr b_;
};

class PowIntNode final : public FieldNode {
 public:
  PowIntNode(NodePtr a, long long n) : a_(std::move(a)), n_(n) {}

  double value(const Point& p) const override {
    const double x = a_->value(p);
    if (n_ < 0 && x == 0.0) throw EvalError("division by zero");
    const double r = std::pow(x, static_cast<double>(n_));
    if (!std::isfinite(r)) throw EvalError("pow overflow");
    return r;
  }

 protected:
  Jet compute(const Point& p, int order) const override {
    return powi(a_->eval(p, order), n_);
  }

 private:
  NodePtr a_;
  long long n_;
};

class PartialNode final : public FieldNode {
 public:
  PartialNode(NodePtr a, int axis) : a_(std::move(a)), axis_(axis) {
    if (axis < 1 || axis > 3)
      throw std::out_of_range("partial axis must be 1, 2 or 3");
  }

 protected:
  Jet compute(const Point& p, int order) const override {
    if (order + 1 > Jet::kMaxOrder)
      throw std::logic_error("derivative chain exceeds the jet order budget");
    return a_->eval(p, order + 1).derivative(axis_);
  }

 private:
  NodePtr a_;
  int axis_;
};

bool const_value_of(const NodePtr& n, double* out) {
  if (const auto* c = dynamic_cast<const ConstNode*>(n.get())) {
    if (out) *out = c->constant_value();
    return true;
  }
  return false;
}

}  // namespace

ScalarField::ScalarField() : node_(std::make_shared<ConstNode>(0.0)) {}
ScalarField::ScalarField(double v) : node_(std::make_shared<ConstNode>(v)) {}
ScalarField::ScalarField(NodePtr node) : node_(std::move(node)) {
  if (!node_) throw std::logic_error("null field node");
}

ScalarField ScalarField::constant(double v) { return ScalarField(v); }

ScalarField ScalarField::coordinate(int axis) {
  return ScalarField(std::make_shared<CoordNode>(axis));
}

double ScalarField::value(const Point& p) const {
  try {
    return node_->value(p);
  } catch (const EvalError& e) {
    if (e.has_point()) throw;
    throw EvalError(e.what(), p);
  }
}

Jet ScalarField::jet(const Point& p, int order) const {
  try {
    return node_->eval(p, order);
  } catch (const EvalError& e) {
    if (e.has_point()) throw;
    throw EvalError(e.what(), p);
  }
}

bool ScalarField::is_constant(double* out) const {
  return const_value_of(node_, out);
}

ScalarField ScalarField::operator-() const {
  double v;
  if (is_constant(&v)) return ScalarField(-v);
  return ScalarField(std::make_shared<UnaryNode>(UnaryOp::Neg, node_));
}

namespace {

ScalarField binary(BinaryOp op, const ScalarField& a, const ScalarField& b) {
  // Constant folding for arithmetic; anything with a domain condition is
  // left in the graph so errors surface at evaluation time.
  double x, y;
  if (a.is_constant(&x) && b.is_constant(&y)) {
    switch (op) {
      case BinaryOp::Add: return ScalarField(x + y);
      case BinaryOp::Sub: return ScalarField(x - y);
      case BinaryOp::Mul: return ScalarField(x * y);
      case BinaryOp::Div:
        if (y != 0.0) return ScalarField(x / y);
        break;
      case BinaryOp::Pow:
        break;
    }
  }
  return ScalarField(std::make_shared<BinaryNode>(op, a.node(), b.node()));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return binary(BinaryOp::Add, a, b);
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return binary(BinaryOp::Sub, a, b);
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return binary(BinaryOp::Mul, a, b);
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return binary(BinaryOp::Div, a, b);
}

namespace {
ScalarField unary(UnaryOp op, const ScalarField& f) {
  return ScalarField(std::make_shared<UnaryNode>(op, f.node()));
}
}  // namespace

ScalarField exp(const ScalarField& f) { return unary(UnaryOp::Exp, f); }
ScalarField log(const ScalarField& f) { return unary(UnaryOp::Log, f); }
ScalarField sqrt(const ScalarField& f) { return unary(UnaryOp::Sqrt, f); }
ScalarField sin(const ScalarField& f) { return unary(UnaryOp::Sin, f); }
ScalarField cos(const ScalarField& f) { return unary(UnaryOp::Cos, f); }
ScalarField tan(const ScalarField& f) { return unary(UnaryOp::Tan, f); }
ScalarField abs(const ScalarField& f) { return unary(UnaryOp::Abs, f); }

ScalarField powi(const ScalarField& f, long long n) {
  return ScalarField(std::make_shared<PowIntNode>(f.node(), n));
}

ScalarField pow(const ScalarField& f, double p) {
  if (p == static_cast<double>(static_cast<long long>(p)) && std::abs(p) <= 1e9)
    return powi(f, static_cast<long long>(p));
  return pow(f, ScalarField(p));
}

ScalarField pow(const ScalarField& a, const ScalarField& b) {
  double e;
  if (b.is_constant(&e) && e == static_cast<double>(static_cast<long long>(e)) &&
      std::abs(e) <= 1e9)
    return powi(a, static_cast<long long>(e));
  return binary(BinaryOp::Pow, a, b);
}

ScalarField partial(const ScalarField& f, int axis) {
  double v;
  if (f.is_constant(&v)) return ScalarField(0.0);
  return ScalarField(std::make_shared<PartialNode>(f.node(), axis));
}

}  // namespace cartanforge
