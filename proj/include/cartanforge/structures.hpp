#pragma once

#include "cartanforge/coframe.hpp"
#include "cartanforge/report.hpp"

namespace cartanforge {

/// Coframe satisfying d a1 = a2^a3, d a2 = -a1^a3, d a3 = R a1^a2, together
/// with its structure function R (which then obeys R_3 = 0).
struct CartanStructure {
  Coframe coframe;
  ScalarField R;
};

/// Coframe satisfying
///   d w1 = -I w1^w3 + w2^w3,
///   d w2 = -w1^w3,
///   d w3 = K w1^w2 - J w1^w3,
/// with invariants (I, J, K).
struct FinslerStructure {
  Coframe coframe;
  ScalarField I, J, K;
};

struct CartanVerification {
  StructureReport report;
  CartanStructure structure;
};

/// Checks the three structure equations, extracts R as the a1^a2 coefficient
/// of d a3, and reports the off-basis residuals together with R_3.
/// Tolerance violations are reported, not thrown.
CartanVerification verify_cartan(const Coframe& cf, double tol,
                                 const std::vector<Point>& pts);
CartanVerification verify_cartan(const Coframe& cf, double tol = 1e-8);

struct FinslerExtraction {
  StructureReport report;
  FinslerStructure structure;
};

/// Extracts (I, J, K) from the expanded exterior derivatives and reports the
/// residuals of every coefficient the structure equations pin.
FinslerExtraction extract_invariants(const Coframe& cf, double tol,
                                     const std::vector<Point>& pts);
FinslerExtraction extract_invariants(const Coframe& cf, double tol = 1e-8);

/// Residuals of the Bianchi identities J = I_2 and K_3 + K I + J_2 = 0,
/// directional derivatives taken against the structure's own coframe.
ResidualSet check_bianchi(const FinslerStructure& fs, double tol,
                          const std::vector<Point>& pts);
ResidualSet check_bianchi(const FinslerStructure& fs, double tol = 1e-8);

/// Ricci identities for iterated coframe derivatives of f on a Cartan
/// structure: f_1 + f_32 - f_23, f_2 + f_13 - f_31, R f_3 + f_21 - f_12.
ResidualSet check_ricci(const ScalarField& f, const CartanStructure& cs,
                        double tol, const std::vector<Point>& pts);
ResidualSet check_ricci(const ScalarField& f, const CartanStructure& cs,
                        double tol = 1e-8);

struct HodgeOperators {
  KForm star_dlog;       // *d log v = -(v_2/v) a1 + (v_1/v) a2
  ScalarField laplacian;  // ((v_11 + v_22) v - v_1^2 - v_2^2) / v^2
};

HodgeOperators hodge_laplacian(const ScalarField& v, const CartanStructure& cs);

/// Conformal change (v a1, v a2, a3 - *d log v) with the rescaled structure
/// function (R - laplacian of log v) / v^2. The factor must be positive and
/// fiber-independent on the sample domain; violations throw
/// PreconditionError.
CartanStructure conformal_rescale(const CartanStructure& cs,
                                  const ScalarField& v, double tol,
                                  const std::vector<Point>& pts);
CartanStructure conformal_rescale(const CartanStructure& cs,
                                  const ScalarField& v, double tol = 1e-8);

/// Lie-derivative identities along the frame vector dual to w2:
/// L w1 = w3, L w3 = -K w1, the invariance of w1^w3, the polarization
/// identity against (1 - K) w1 . w3, and the K = 1 Bianchi consequences
/// L(I w1 + J w3) = 0 and (I^2 + J^2)_2 = 0.
ResidualSet lie_k1_checks(const FinslerStructure& fs, double tol,
                          const std::vector<Point>& pts);
ResidualSet lie_k1_checks(const FinslerStructure& fs, double tol = 1e-8);

/// Lie-derivative identities along the frame vector dual to w1 for a scaling
/// function m: L w2 = -w3, L w3 = K w2 - J w3, and the derivative of the
/// quadratic form (m w2)^2 + (w3)^2, which vanishes when m_1 = 0, m^2 = K
/// and J = 0.
ResidualSet lie_surface_checks(const FinslerStructure& fs,
                               const ScalarField& m, double tol,
                               const std::vector<Point>& pts);
ResidualSet lie_surface_checks(const FinslerStructure& fs,
                               const ScalarField& m, double tol = 1e-8);

}  // namespace cartanforge
