#pragma once

#include <array>
#include <vector>

#include "cartanforge/field.hpp"

namespace cartanforge {

/// Differential form on the 3-chart, degree 0..3, stored by coordinate
/// components. Degree-2 components live in the cyclic basis
/// (dc2^dc3, dc3^dc1, dc1^dc2), which turns a wedge of 1-forms into a cross
/// product, the exterior derivative of a 1-form into a curl, and of a 2-form
/// into a divergence.
class KForm {
 public:
  static KForm scalar(ScalarField f);
  static KForm one_form(ScalarField a1, ScalarField a2, ScalarField a3);
  static KForm two_form(ScalarField c23, ScalarField c31, ScalarField c12);
  static KForm three_form(ScalarField c123);
  static KForm zero(int degree);

  int degree() const { return degree_; }

  /// Stored components: 1 for degree 0 and 3, otherwise 3.
  int component_count() const { return static_cast<int>(c_.size()); }
  /// i is 1-based; for degree 2 the order is (c23, c31, c12).
  const ScalarField& component(int i) const;

  KForm operator-() const;

  friend KForm operator+(const KForm& a, const KForm& b);
  friend KForm operator-(const KForm& a, const KForm& b);
  friend KForm operator*(const ScalarField& f, const KForm& w);
  friend KForm operator*(const KForm& w, const ScalarField& f);

 private:
  KForm(int degree, std::vector<ScalarField> c);

  int degree_;
  std::vector<ScalarField> c_;
};

/// Graded wedge product; the degree sum must not exceed 3.
KForm wedge(const KForm& a, const KForm& b);

/// Exterior derivative. For a degree-3 input every 4-form on a 3-chart
/// vanishes; by documented convention the zero 3-form is returned as the
/// annihilation sentinel.
KForm exterior_derivative(const KForm& w);

/// Interior product with a vector field given by coordinate components;
/// defined for degrees 1..3.
KForm contract(const KForm& w, const std::array<ScalarField, 3>& x);

/// Cartan formula i_X dw + d(i_X w); degree 0 uses X(f) = i_X df.
KForm lie_derivative(const KForm& w, const std::array<ScalarField, 3>& x);

/// Symmetric product of two 1-forms; components s11, s22, s33, s12, s13, s23
/// with s_ij = (u_i v_j + u_j v_i) / 2.
std::array<ScalarField, 6> symmetric_product(const KForm& u, const KForm& v);

}  // namespace cartanforge
