#include "cartanforge/coframe.hpp"

#include <cmath>
#include <mutex>

namespace cartanforge {

Coframe::Coframe(KForm a1, KForm a2, KForm a3, Box domain)
    : forms_{std::move(a1), std::move(a2), std::move(a3)},
      domain_(domain) {
  for (const KForm& f : forms_)
    if (f.degree() != 1)
      throw std::invalid_argument("a coframe consists of 1-forms");
}

const KForm& Coframe::form(int i) const {
  if (i < 1 || i > 3) throw std::out_of_range("coframe index must be 1..3");
  return forms_[static_cast<size_t>(i - 1)];
}

const ScalarField& Coframe::component(int i, int j) const {
  return form(i).component(j);
}

Coframe Coframe::with_domain(Box domain) const {
  return Coframe(forms_[0], forms_[1], forms_[2], domain);
}

ScalarField volume_coefficient(const Coframe& cf) {
  auto c = [&](int i, int j) { return cf.component(i, j); };
  return c(1, 1) * (c(2, 2) * c(3, 3) - c(2, 3) * c(3, 2)) -
         c(1, 2) * (c(2, 1) * c(3, 3) - c(2, 3) * c(3, 1)) +
         c(1, 3) * (c(2, 1) * c(3, 2) - c(2, 2) * c(3, 1));
}

namespace {

constexpr double kSingularTol = 1e-12;

/// Gaussian elimination with partial pivoting in jet arithmetic. Solves the
/// pointwise system exactly through the requested derivative order.
std::array<Jet, 3> solve3(std::array<std::array<Jet, 3>, 3> a,
                          std::array<Jet, 3> b) {
  double det_abs = 1.0;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(a[row][col].value()) > std::abs(a[pivot][col].value()))
        pivot = row;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    const double pv = a[col][col].value();
    det_abs *= std::abs(pv);
    if (det_abs < kSingularTol)
      throw EvalError("singular coframe matrix (|det| < 1e-12)");
    for (int row = col + 1; row < 3; ++row) {
      if (a[row][col].value() == 0.0) {
        bool all_zero = true;
        // The subdiagonal jet may still carry derivative content.
        for (int i = 0; i <= a[row][col].order() && all_zero; ++i)
          for (int j = 0; i + j <= a[row][col].order() && all_zero; ++j)
            for (int k = 0; i + j + k <= a[row][col].order() && all_zero; ++k)
              if (a[row][col].coeff(i, j, k) != 0.0) all_zero = false;
        if (all_zero) continue;
      }
      Jet factor = a[row][col] / a[col][col];
      for (int c2 = col; c2 < 3; ++c2)
        a[row][c2] -= factor * a[col][c2];
      b[row] -= factor * b[col];
    }
  }
  std::array<Jet, 3> x{b[0], b[1], b[2]};
  for (int row = 2; row >= 0; --row) {
    for (int c2 = row + 1; c2 < 3; ++c2) x[row] -= a[row][c2] * x[c2];
    x[row] = x[row] / a[row][row];
  }
  return x;
}

/// Shared per-point solution of a 3x3 system whose three outputs back three
/// sibling fields; caches the last point at the highest order computed.
class SolveCore {
 public:
  virtual ~SolveCore() = default;

  std::array<Jet, 3> eval3(const Point& p, int order) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (cached_ && point_ == p && jets_[0].order() >= order) {
        if (jets_[0].order() == order) return jets_;
        return {jets_[0].truncated(order), jets_[1].truncated(order),
                jets_[2].truncated(order)};
      }
    }
    std::array<Jet, 3> r = compute3(p, order);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (!cached_ || !(point_ == p) || jets_[0].order() < order) {
        cached_ = true;
        point_ = p;
        jets_ = r;
      }
    }
    return r;
  }

 protected:
  virtual std::array<Jet, 3> compute3(const Point& p, int order) const = 0;

  static std::array<std::array<Jet, 3>, 3> component_jets(const Coframe& cf,
                                                          const Point& p,
                                                          int order) {
    std::array<std::array<Jet, 3>, 3> m{
        std::array<Jet, 3>{Jet(0), Jet(0), Jet(0)},
        std::array<Jet, 3>{Jet(0), Jet(0), Jet(0)},
        std::array<Jet, 3>{Jet(0), Jet(0), Jet(0)}};
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
            cf.component(i, j).jet(p, order);
    return m;
  }

 private:
  mutable std::mutex mu_;
  mutable bool cached_ = false;
  mutable Point point_{};
  mutable std::array<Jet, 3> jets_{Jet(0), Jet(0), Jet(0)};
};

/// Solves sum_i M[i][j] d_i = grad_j f for the coframe coefficients of df.
class DerivativeCore final : public SolveCore {
 public:
  DerivativeCore(ScalarField f, Coframe cf) : f_(std::move(f)), cf_(std::move(cf)) {}

 protected:
  std::array<Jet, 3> compute3(const Point& p, int order) const override {
    if (order + 1 > Jet::kMaxOrder)
      throw std::logic_error("derivative chain exceeds the jet order budget");
    auto m = component_jets(cf_, p, order);
    Jet fj = f_.jet(p, order + 1);
    std::array<std::array<Jet, 3>, 3> a{
        std::array<Jet, 3>{m[0][0], m[1][0], m[2][0]},
        std::array<Jet, 3>{m[0][1], m[1][1], m[2][1]},
        std::array<Jet, 3>{m[0][2], m[1][2], m[2][2]}};
    std::array<Jet, 3> b{fj.derivative(1), fj.derivative(2), fj.derivative(3)};
    return solve3(a, b);
  }

 private:
  ScalarField f_;
  Coframe cf_;
};

/// Solves [a2^a3 | a3^a1 | a1^a2] c = w for cyclic-basis coefficients.
class ExpansionCore final : public SolveCore {
 public:
  ExpansionCore(std::array<ScalarField, 3> w, Coframe cf)
      : w_(std::move(w)), cf_(std::move(cf)) {}

 protected:
  std::array<Jet, 3> compute3(const Point& p, int order) const override {
    auto m = component_jets(cf_, p, order);
    auto cross = [](const std::array<Jet, 3>& u, const std::array<Jet, 3>& v) {
      return std::array<Jet, 3>{u[1] * v[2] - u[2] * v[1],
                                u[2] * v[0] - u[0] * v[2],
                                u[0] * v[1] - u[1] * v[0]};
    };
    std::array<Jet, 3> b23 = cross(m[1], m[2]);
    std::array<Jet, 3> b31 = cross(m[2], m[0]);
    std::array<Jet, 3> b12 = cross(m[0], m[1]);
    std::array<std::array<Jet, 3>, 3> a{
        std::array<Jet, 3>{b23[0], b31[0], b12[0]},
        std::array<Jet, 3>{b23[1], b31[1], b12[1]},
        std::array<Jet, 3>{b23[2], b31[2], b12[2]}};
    std::array<Jet, 3> b{w_[0].jet(p, order), w_[1].jet(p, order),
                         w_[2].jet(p, order)};
    return solve3(a, b);
  }

 private:
  std::array<ScalarField, 3> w_;
  Coframe cf_;
};

/// Solves M x = e_which for the coordinate components of a dual frame vector.
class DualFrameCore final : public SolveCore {
 public:
  DualFrameCore(Coframe cf, int which) : cf_(std::move(cf)), which_(which) {}

 protected:
  std::array<Jet, 3> compute3(const Point& p, int order) const override {
    auto a = component_jets(cf_, p, order);
    std::array<Jet, 3> b{Jet::constant(which_ == 1 ? 1.0 : 0.0, order),
                         Jet::constant(which_ == 2 ? 1.0 : 0.0, order),
                         Jet::constant(which_ == 3 ? 1.0 : 0.0, order)};
    return solve3(a, b);
  }

 private:
  Coframe cf_;
  int which_;
};

class SolveComponentNode final : public FieldNode {
 public:
  SolveComponentNode(std::shared_ptr<const SolveCore> core, int which)
      : core_(std::move(core)), which_(which) {}

 protected:
  Jet compute(const Point& p, int order) const override {
    return core_->eval3(p, order)[static_cast<size_t>(which_)];
  }

 private:
  std::shared_ptr<const SolveCore> core_;
  int which_;
};

std::array<ScalarField, 3> core_fields(std::shared_ptr<const SolveCore> core) {
  return {ScalarField(std::make_shared<SolveComponentNode>(core, 0)),
          ScalarField(std::make_shared<SolveComponentNode>(core, 1)),
          ScalarField(std::make_shared<SolveComponentNode>(core, 2))};
}

}  // namespace

const ScalarField& CoframeDerivatives::get(int i) const {
  switch (i) {
    case 1: return d1;
    case 2: return d2;
    case 3: return d3;
  }
  throw std::out_of_range("coframe derivative index must be 1..3");
}

CoframeDerivatives coframe_derivatives(const ScalarField& f, const Coframe& cf) {
  auto fields = core_fields(std::make_shared<DerivativeCore>(f, cf));
  return {fields[0], fields[1], fields[2]};
}

TwoFormExpansion expand_two_form(const KForm& w, const Coframe& cf) {
  if (w.degree() != 2)
    throw std::invalid_argument("expand_two_form needs a 2-form");
  std::array<ScalarField, 3> comps{w.component(1), w.component(2),
                                   w.component(3)};
  auto fields = core_fields(std::make_shared<ExpansionCore>(comps, cf));
  return {fields[0], fields[1], fields[2]};
}

OrderedTwoForm to_ordered_basis(const TwoFormExpansion& e) {
  return {e.c12, -e.c31, e.c23};
}

TwoFormExpansion to_cyclic_basis(const OrderedTwoForm& o) {
  return {o.p23, -o.p13, o.p12};
}

std::array<ScalarField, 3> dual_frame_vector(const Coframe& cf, int which) {
  if (which < 1 || which > 3)
    throw std::out_of_range("dual frame index must be 1..3");
  return core_fields(std::make_shared<DualFrameCore>(cf, which));
}

}  // namespace cartanforge
