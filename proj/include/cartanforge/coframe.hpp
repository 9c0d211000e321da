#pragma once

#include "cartanforge/forms.hpp"
#include "cartanforge/sampling.hpp"

namespace cartanforge {

/// Three 1-forms spanning the cotangent space over a sample domain. The
/// component matrix rows are the forms, columns the coordinate differentials
/// dc1, dc2, dc3.
class Coframe {
 public:
  Coframe(KForm a1, KForm a2, KForm a3, Box domain);

  const KForm& form(int i) const;                 // i in 1..3
  const ScalarField& component(int i, int j) const;  // form i on dc_j
  const Box& domain() const { return domain_; }
  Coframe with_domain(Box domain) const;

 private:
  std::array<KForm, 3> forms_;
  Box domain_;
};

/// Determinant of the component matrix: a1^a2^a3 = det * dc1^dc2^dc3.
ScalarField volume_coefficient(const Coframe& cf);

/// Directional derivative coefficients of f against the coframe:
/// df = d1 * a1 + d2 * a2 + d3 * a3. Evaluation solves the 3x3 component
/// system per point in jet arithmetic (partial pivoting); a matrix with
/// |det| < 1e-12 is reported singular instead of being solved.
struct CoframeDerivatives {
  ScalarField d1, d2, d3;
  const ScalarField& get(int i) const;
};

CoframeDerivatives coframe_derivatives(const ScalarField& f, const Coframe& cf);

/// Coefficients of a 2-form in the cyclic coframe basis:
/// w = c23 * a2^a3 + c31 * a3^a1 + c12 * a1^a2.
struct TwoFormExpansion {
  ScalarField c23, c31, c12;
};

TwoFormExpansion expand_two_form(const KForm& w, const Coframe& cf);

/// The same coefficients re-expressed on the ordered basis
/// (a1^a2, a1^a3, a2^a3): p12 = c12, p13 = -c31, p23 = c23.
struct OrderedTwoForm {
  ScalarField p12, p13, p23;
};

OrderedTwoForm to_ordered_basis(const TwoFormExpansion& e);
TwoFormExpansion to_cyclic_basis(const OrderedTwoForm& o);

/// Coordinate components of the frame vector dual to the coframe,
/// a^i(e_which) = delta. Solved per point like coframe_derivatives.
std::array<ScalarField, 3> dual_frame_vector(const Coframe& cf, int which);

}  // namespace cartanforge
