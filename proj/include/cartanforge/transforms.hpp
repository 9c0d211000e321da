#pragma once

#include <array>
#include <string>

#include "cartanforge/structures.hpp"

namespace cartanforge {

/// 3x3 matrix of scalar fields relating two coframes, w_i = sum_j a_ij b_j.
/// Minors are unsigned 2x2 subdeterminants, so for the matrix A sending
/// alpha to omega they are exactly the wedge coefficients:
///   w2^w3 = M13 b1^b2 + M12 b1^b3 + M11 b2^b3,
///   w1^w3 = M23 b1^b2 + M22 b1^b3 + M21 b2^b3,
///   w1^w2 = M33 b1^b2 + M32 b1^b3 + M31 b2^b3.
class TransformMatrix {
 public:
  explicit TransformMatrix(std::array<std::array<ScalarField, 3>, 3> entries);
  static TransformMatrix identity();

  const ScalarField& at(int i, int j) const;  // 1-based row, column
  const ScalarField& minor(int i, int j) const;
  ScalarField det() const;

  /// Rows applied to a coframe: returns (w1, w2, w3) as coordinate 1-forms
  /// over the same domain.
  Coframe apply(const Coframe& base) const;

 private:
  std::array<std::array<ScalarField, 3>, 3> a_;
  std::array<std::array<ScalarField, 3>, 3> minors_;
};

/// Reads nine expression strings keyed a11..a33 from a JSON file.
TransformMatrix load_matrix(const std::string& path);
TransformMatrix matrix_from_json(const std::string& text);

/// The nine first-order relations a transform matrix must satisfy for
/// omega = A alpha to carry the structure (cs on alpha, fs on omega), as
/// residual fields named by their leading derivative (a11_2, a21_2, a31_2,
/// a13_1, a23_1, a33_1, a12_3, a22_3, a32_3). All matrix-entry derivatives
/// are taken against the alpha coframe.
ResidualSet first_order_relations(const TransformMatrix& A,
                             const CartanStructure& cs,
                             const FinslerStructure& fs, double tol,
                             const std::vector<Point>& pts);
ResidualSet first_order_relations(const TransformMatrix& A,
                             const CartanStructure& cs,
                             const FinslerStructure& fs, double tol = 1e-8);

/// The three obstruction terms whose vanishing is necessary for omega =
/// A alpha to solve the structure matching problem. Minor and invariant
/// derivatives are taken against the alpha coframe.
struct TorsionTriple {
  ScalarField T13, T23, T33;
};

TorsionTriple torsion_terms(const TransformMatrix& A,
                            const CartanStructure& cs, const ScalarField& I,
                            const ScalarField& J, const ScalarField& K);

/// Inverts the unit-flag-curvature change of coframe: given a structure with
/// K = 1 and a positive scaling m with m_2 = 0 (derivative against omega),
/// builds the candidate base coframe
///   alpha1 = w1/m, alpha2 = w3/m,
///   alpha3 = (I m - m_3) alpha1 + (m_1 + J m) alpha2 - w2
/// (m-subscripts against omega), verifies it, and reports the connection-form
/// structure equation d phi = (R - m^2) alpha1^alpha2 - d(*d log m) with
/// phi = m (I alpha1 + J alpha2). For m identically 1 it also reports the
/// curvature condition R + I_2 - J_1 - 1 (derivatives against alpha).
struct K1Result {
  CartanVerification verification;  // candidate structure and its report
  ResidualSet residuals;
  bool pass() const {
    return verification.report.pass() && residuals.pass();
  }
};

K1Result k1_transform(const FinslerStructure& fs, const ScalarField& m,
                      double tol, const std::vector<Point>& pts);
K1Result k1_transform(const FinslerStructure& fs, const ScalarField& m,
                      double tol = 1e-8);

/// The projective scaling m = sign * sqrt(R) with
/// I = sign * R_2 / (2 R^{3/2}), J = -sign * R_1 / (2 R^{3/2}) applied
/// through the unit-flag-curvature change of coframe (for which the omega2
/// row collapses to -alpha3). R must be positive on the sample points.
FinslerStructure k1_projective(const CartanStructure& cs, int sign,
                               double tol, const std::vector<Point>& pts);
FinslerStructure k1_projective(const CartanStructure& cs, int sign = 1,
                               double tol = 1e-8);

/// Landsberg-type change of coframe with identity conformal factor:
///   w1 = (1/m)_2 alpha1 + (1/m) alpha3, w2 = (1/m) alpha1, w3 = alpha2,
/// carrying I = -2 m_2 / m, J = 0, K = m^2 (m-subscripts against alpha).
/// Residuals: m_3, the mixed derivative m_12, the curvature condition
/// R - (1 - m_22 / m), and the Landsberg condition I_2 against the built
/// omega coframe.
struct J0Result {
  FinslerStructure structure;
  ResidualSet residuals;
  bool pass() const { return residuals.pass(); }
};

J0Result j0_identity_transform(const CartanStructure& cs, const ScalarField& m,
                               double tol, const std::vector<Point>& pts);
J0Result j0_identity_transform(const CartanStructure& cs, const ScalarField& m,
                               double tol = 1e-8);

/// General conformal version of the Landsberg-type change of coframe:
///   w1 = (1/f)(f/m)_2 alpha1 - (f_1/(f m)) alpha2 + (1/m) alpha3,
///   w2 = (f/m) alpha1, w3 = f alpha2,
/// carrying I = -2 m_2 / (f m), J = 0, K = m^2. Residuals: f_3, m_3,
/// (f/m)_3, the Landsberg condition m_21 - (f_1 m_2 + f_2 m_1)/f, the
/// curvature condition
///   R - f^2 - (f_11 + f_22)/f + (f_1^2 + f_2^2)/f^2
///     + (f_1 m_1 - f_2 m_2)/(f m) + m_22/m,
/// and I_2 against the built omega coframe.
J0Result j0_conformal_transform(const CartanStructure& cs,
                                const ScalarField& m, const ScalarField& f,
                                double tol, const std::vector<Point>& pts);
J0Result j0_conformal_transform(const CartanStructure& cs,
                                const ScalarField& m, const ScalarField& f,
                                double tol = 1e-8);

/// Rebuilds a base structure from a surface-type structure and a scaling m
/// with m_1 = 0, m^2 = K (derivatives against omega):
///   eta1 = m w2, eta2 = w3, eta3 = m w1 + m_3 w2,
/// verified with structure function R = 1 - m_33 / m. Residuals: m_1,
/// m^2 - K, and the match between extracted and formula R.
struct CartanRecoveryResult {
  CartanVerification verification;
  ResidualSet residuals;
  bool pass() const {
    return verification.report.pass() && residuals.pass();
  }
};

CartanRecoveryResult recover_cartan(const FinslerStructure& fs, const ScalarField& m,
                             double tol, const std::vector<Point>& pts);
CartanRecoveryResult recover_cartan(const FinslerStructure& fs, const ScalarField& m,
                             double tol = 1e-8);

/// Second-order compatibility system a structure function must satisfy for
/// the Landsberg construction, plus the conserved combination
/// Q = (R_1^2 + R_2^2 + R - 3/2) e^{2(R-1)}. Residual names: R_3, R_11_res,
/// R_12_res, R_21_res, R_22_res (and t1, t2 when a scaling m is supplied:
/// t1 = m R_1 - m_1, t2 = -m_11 + m (1 - R)).
struct EdsReport {
  ResidualSet residuals;
  ScalarField Q;
  FieldStat q_stat;
  double q_spread() const { return q_stat.spread(); }
  bool pass() const { return residuals.pass(); }
};

EdsReport eds_residuals(const CartanStructure& cs, double tol,
                        const std::vector<Point>& pts);
EdsReport eds_residuals(const CartanStructure& cs, double tol = 1e-8);
EdsReport eds_residuals(const CartanStructure& cs, const ScalarField& m,
                        double tol, const std::vector<Point>& pts);

/// The Landsberg-type structure built from a verified base structure whose
/// structure function satisfies the compatibility system (checked, throws
/// PreconditionError otherwise): with m = C e^R,
///   w1 = (1/C) e^{-R} (alpha3 - R_2 alpha1),
///   w2 = (1/C) e^{-R} alpha1, w3 = alpha2,
/// carrying I = -2 R_2, J = 0, K = C^2 e^{2R}.
FinslerStructure landsberg_from_cartan(const CartanStructure& cs, double C,
                                       double tol,
                                       const std::vector<Point>& pts);
FinslerStructure landsberg_from_cartan(const CartanStructure& cs, double C = 1.0,
                                       double tol = 1e-8);

}  // namespace cartanforge
