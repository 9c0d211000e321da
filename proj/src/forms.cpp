#include "cartanforge/forms.hpp"

#include <stdexcept>

namespace cartanforge {

namespace {

int expected_components(int degree) {
  switch (degree) {
    case 0: case 3: return 1;
    case 1: case 2: return 3;
  }
  throw std::invalid_argument("form degree must be 0..3");
}

std::array<ScalarField, 3> cross(const std::array<ScalarField, 3>& u,
                                 const std::array<ScalarField, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

std::array<ScalarField, 3> comps3(const KForm& w) {
  return {w.component(1), w.component(2), w.component(3)};
}

}  // namespace

KForm::KForm(int degree, std::vector<ScalarField> c)
    : degree_(degree), c_(std::move(c)) {
  if (static_cast<int>(c_.size()) != expected_components(degree))
    throw std::logic_error("component count does not match the form degree");
}

KForm KForm::scalar(ScalarField f) { return KForm(0, {std::move(f)}); }

KForm KForm::one_form(ScalarField a1, ScalarField a2, ScalarField a3) {
  return KForm(1, {std::move(a1), std::move(a2), std::move(a3)});
}

KForm KForm::two_form(ScalarField c23, ScalarField c31, ScalarField c12) {
  return KForm(2, {std::move(c23), std::move(c31), std::move(c12)});
}

KForm KForm::three_form(ScalarField c123) { return KForm(3, {std::move(c123)}); }

KForm KForm::zero(int degree) {
  std::vector<ScalarField> c(static_cast<size_t>(expected_components(degree)),
                             ScalarField(0.0));
  return KForm(degree, std::move(c));
}

const ScalarField& KForm::component(int i) const {
  if (i < 1 || i > component_count())
    throw std::out_of_range("form component index out of range");
  return c_[static_cast<size_t>(i - 1)];
}

KForm KForm::operator-() const {
  KForm out = *this;
  for (ScalarField& f : out.c_) f = -f;
  return out;
}

KForm operator+(const KForm& a, const KForm& b) {
  if (a.degree_ != b.degree_)
    throw std::invalid_argument("cannot add forms of different degrees");
  KForm out = a;
  for (size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] + b.c_[i];
  return out;
}

KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

KForm operator*(const ScalarField& f, const KForm& w) {
  KForm out = w;
  for (ScalarField& c : out.c_) c = f * c;
  return out;
}

KForm operator*(const KForm& w, const ScalarField& f) { return f * w; }

KForm wedge(const KForm& a, const KForm& b) {
  const int p = a.degree();
  const int q = b.degree();
  if (p + q > 3)
    throw std::invalid_argument("wedge degree overflow: " + std::to_string(p) +
                                " + " + std::to_string(q) + " > 3");
  if (p == 0) return a.component(1) * b;
  if (q == 0) return b.component(1) * a;
  if (p == 1 && q == 1) {
    auto c = cross(comps3(a), comps3(b));
    return KForm::two_form(c[0], c[1], c[2]);
  }
  // 1-form against 2-form (either order): dot product times the volume form.
  const KForm& one = (p == 1) ? a : b;
  const KForm& two = (p == 1) ? b : a;
  ScalarField dot = one.component(1) * two.component(1) +
                    one.component(2) * two.component(2) +
                    one.component(3) * two.component(3);
  return KForm::three_form(dot);
}

KForm exterior_derivative(const KForm& w) {
  switch (w.degree()) {
    case 0: {
      const ScalarField& f = w.component(1);
      return KForm::one_form(partial(f, 1), partial(f, 2), partial(f, 3));
    }
    case 1: {
      auto a = comps3(w);
      return KForm::two_form(partial(a[2], 2) - partial(a[1], 3),
                             partial(a[0], 3) - partial(a[2], 1),
                             partial(a[1], 1) - partial(a[0], 2));
    }
    case 2: {
      auto c = comps3(w);
      return KForm::three_form(partial(c[0], 1) + partial(c[1], 2) +
                               partial(c[2], 3));
    }
    case 3:
      // Any 4-form on a 3-chart is zero; signal by returning the zero 3-form.
      return KForm::zero(3);
  }
  throw std::logic_error("unhandled form degree");
}

KForm contract(const KForm& w, const std::array<ScalarField, 3>& x) {
  switch (w.degree()) {
    case 1: {
      auto u = comps3(w);
      return KForm::scalar(u[0] * x[0] + u[1] * x[1] + u[2] * x[2]);
    }
    case 2: {
      auto c = cross(comps3(w), x);
      return KForm::one_form(c[0], c[1], c[2]);
    }
    case 3: {
      const ScalarField& c = w.component(1);
      return KForm::two_form(c * x[0], c * x[1], c * x[2]);
    }
  }
  throw std::invalid_argument("contraction needs a form of degree 1..3");
}

KForm lie_derivative(const KForm& w, const std::array<ScalarField, 3>& x) {
  if (w.degree() == 0) return contract(exterior_derivative(w), x);
  if (w.degree() == 3) return exterior_derivative(contract(w, x));
  return contract(exterior_derivative(w), x) +
         exterior_derivative(contract(w, x));
}

std::array<ScalarField, 6> symmetric_product(const KForm& u, const KForm& v) {
  if (u.degree() != 1 || v.degree() != 1)
    throw std::invalid_argument("symmetric product needs two 1-forms");
  auto a = comps3(u);
  auto b = comps3(v);
  auto s = [&](int i, int j) {
    return (a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] +
            a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)]) *
           ScalarField(0.5);
  };
  return {s(0, 0), s(1, 1), s(2, 2), s(0, 1), s(0, 2), s(1, 2)};
}

}  // namespace cartanforge
