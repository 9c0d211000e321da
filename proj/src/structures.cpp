#include "cartanforge/structures.hpp"

namespace cartanforge {

namespace {

std::vector<Point> default_grid(const Coframe& cf) {
  return cf.domain().grid(10);
}

void add_form_components(ResidualSet& rs, const std::string& prefix,
                         const KForm& w) {
  static const char* suffix1[] = {"c1", "c2", "c3"};
  static const char* suffix2[] = {"c23", "c31", "c12"};
  for (int i = 1; i <= w.component_count(); ++i) {
    const char* tag = (w.degree() == 2) ? suffix2[i - 1]
                      : (w.degree() == 1) ? suffix1[i - 1]
                                          : "val";
    rs.add(prefix + "_" + tag, w.component(i));
  }
}

}  // namespace

CartanVerification verify_cartan(const Coframe& cf, double tol,
                                 const std::vector<Point>& pts) {
  TwoFormExpansion e1 = expand_two_form(exterior_derivative(cf.form(1)), cf);
  TwoFormExpansion e2 = expand_two_form(exterior_derivative(cf.form(2)), cf);
  TwoFormExpansion e3 = expand_two_form(exterior_derivative(cf.form(3)), cf);

  ScalarField R = e3.c12;

  StructureReport rep{ResidualSet(tol), {}};
  rep.residuals.add("da1_c23", e1.c23 - 1.0);  // d a1 = a2^a3
  rep.residuals.add("da1_c31", e1.c31);
  rep.residuals.add("da1_c12", e1.c12);
  rep.residuals.add("da2_c23", e2.c23);        // d a2 = -a1^a3 = a3^a1
  rep.residuals.add("da2_c31", e2.c31 - 1.0);
  rep.residuals.add("da2_c12", e2.c12);
  rep.residuals.add("da3_c23", e3.c23);        // d a3 = R a1^a2
  rep.residuals.add("da3_c31", e3.c31);
  rep.residuals.add("R_3", coframe_derivatives(R, cf).d3);
  rep.residuals.evaluate(pts);
  rep.add_extracted("R", R, pts);

  return {std::move(rep), CartanStructure{cf, R}};
}

CartanVerification verify_cartan(const Coframe& cf, double tol) {
  return verify_cartan(cf, tol, default_grid(cf));
}

FinslerExtraction extract_invariants(const Coframe& cf, double tol,
                                     const std::vector<Point>& pts) {
  TwoFormExpansion e1 = expand_two_form(exterior_derivative(cf.form(1)), cf);
  TwoFormExpansion e2 = expand_two_form(exterior_derivative(cf.form(2)), cf);
  TwoFormExpansion e3 = expand_two_form(exterior_derivative(cf.form(3)), cf);

  // d w1 = -I w1^w3 + w2^w3 has cyclic coefficients (1, I, 0);
  // d w2 = -w1^w3 gives (0, 1, 0); d w3 = K w1^w2 - J w1^w3 gives (0, J, K).
  ScalarField I = e1.c31;
  ScalarField J = e3.c31;
  ScalarField K = e3.c12;

  StructureReport rep{ResidualSet(tol), {}};
  rep.residuals.add("dw1_c23", e1.c23 - 1.0);
  rep.residuals.add("dw1_c12", e1.c12);
  rep.residuals.add("dw2_c23", e2.c23);
  rep.residuals.add("dw2_c31", e2.c31 - 1.0);
  rep.residuals.add("dw2_c12", e2.c12);
  rep.residuals.add("dw3_c23", e3.c23);
  rep.residuals.evaluate(pts);
  rep.add_extracted("I", I, pts);
  rep.add_extracted("J", J, pts);
  rep.add_extracted("K", K, pts);

  return {std::move(rep), FinslerStructure{cf, I, J, K}};
}

FinslerExtraction extract_invariants(const Coframe& cf, double tol) {
  return extract_invariants(cf, tol, default_grid(cf));
}

ResidualSet check_bianchi(const FinslerStructure& fs, double tol,
                          const std::vector<Point>& pts) {
  const Coframe& cf = fs.coframe;
  ScalarField I_2 = coframe_derivatives(fs.I, cf).d2;
  ScalarField J_2 = coframe_derivatives(fs.J, cf).d2;
  ScalarField K_3 = coframe_derivatives(fs.K, cf).d3;

  ResidualSet rs(tol);
  rs.add("J_minus_I2", fs.J - I_2);
  rs.add("K3_plus_KI_plus_J2", K_3 + fs.K * fs.I + J_2);
  rs.evaluate(pts);
  return rs;
}

ResidualSet check_bianchi(const FinslerStructure& fs, double tol) {
  return check_bianchi(fs, tol, default_grid(fs.coframe));
}

ResidualSet check_ricci(const ScalarField& f, const CartanStructure& cs,
                        double tol, const std::vector<Point>& pts) {
  const Coframe& cf = cs.coframe;
  CoframeDerivatives fd = coframe_derivatives(f, cf);
  auto second = [&](const ScalarField& fi, int j) {
    return coframe_derivatives(fi, cf).get(j);
  };

  ResidualSet rs(tol);
  rs.add("f1_plus_f32_minus_f23",
         fd.d1 + second(fd.d3, 2) - second(fd.d2, 3));
  rs.add("f2_plus_f13_minus_f31",
         fd.d2 + second(fd.d1, 3) - second(fd.d3, 1));
  rs.add("Rf3_plus_f21_minus_f12",
         cs.R * fd.d3 + second(fd.d2, 1) - second(fd.d1, 2));
  rs.evaluate(pts);
  return rs;
}

ResidualSet check_ricci(const ScalarField& f, const CartanStructure& cs,
                        double tol) {
  return check_ricci(f, cs, tol, default_grid(cs.coframe));
}

HodgeOperators hodge_laplacian(const ScalarField& v, const CartanStructure& cs) {
  const Coframe& cf = cs.coframe;
  CoframeDerivatives vd = coframe_derivatives(v, cf);
  ScalarField v_11 = coframe_derivatives(vd.d1, cf).d1;
  ScalarField v_22 = coframe_derivatives(vd.d2, cf).d2;

  KForm star = (-(vd.d2 / v)) * cf.form(1) + (vd.d1 / v) * cf.form(2);
  ScalarField lap = ((v_11 + v_22) * v - (vd.d1 * vd.d1 + vd.d2 * vd.d2)) /
                    (v * v);
  return {star, lap};
}

CartanStructure conformal_rescale(const CartanStructure& cs,
                                  const ScalarField& v, double tol,
                                  const std::vector<Point>& pts) {
  const Coframe& cf = cs.coframe;
  CoframeDerivatives vd = coframe_derivatives(v, cf);

  FieldStat v_stat = evaluate_stat(v, pts);
  if (!(v_stat.min_value > 0.0))
    throw PreconditionError(
        "conformal factor must be positive on the sample domain (min " +
        format_double_17(v_stat.min_value) + ")");
  FieldStat v3_stat = evaluate_stat(vd.d3, pts);
  if (v3_stat.sup_abs > tol)
    throw PreconditionError(
        "conformal factor depends on the fiber direction: sup |v_3| = " +
        format_double_17(v3_stat.sup_abs) + " at " +
        format_point(v3_stat.argmax));

  HodgeOperators ops = hodge_laplacian(v, cs);
  KForm b1 = v * cf.form(1);
  KForm b2 = v * cf.form(2);
  KForm b3 = cf.form(3) - ops.star_dlog;
  ScalarField R_new = (cs.R - ops.laplacian) / (v * v);
  return {Coframe(b1, b2, b3, cf.domain()), R_new};
}

CartanStructure conformal_rescale(const CartanStructure& cs,
                                  const ScalarField& v, double tol) {
  return conformal_rescale(cs, v, tol, default_grid(cs.coframe));
}

ResidualSet lie_k1_checks(const FinslerStructure& fs, double tol,
                          const std::vector<Point>& pts) {
  const Coframe& cf = fs.coframe;
  std::array<ScalarField, 3> e2 = dual_frame_vector(cf, 2);

  const KForm& w1 = cf.form(1);
  const KForm& w3 = cf.form(3);
  KForm Lw1 = lie_derivative(w1, e2);
  KForm Lw3 = lie_derivative(w3, e2);

  ResidualSet rs(tol);
  add_form_components(rs, "Lw1_minus_w3", Lw1 - w3);
  add_form_components(rs, "Lw3_plus_Kw1", Lw3 + fs.K * w1);
  add_form_components(rs, "L_w1w3", lie_derivative(wedge(w1, w3), e2));

  // Polarization: L w1 . w1 + L w3 . w3 = (1 - K) w1 . w3.
  std::array<ScalarField, 6> q1 = symmetric_product(Lw1, w1);
  std::array<ScalarField, 6> q2 = symmetric_product(Lw3, w3);
  std::array<ScalarField, 6> q3 = symmetric_product(w1, w3);
  static const char* qname[] = {"s11", "s22", "s33", "s12", "s13", "s23"};
  for (int i = 0; i < 6; ++i)
    rs.add(std::string("polarization_") + qname[i],
           q1[static_cast<size_t>(i)] + q2[static_cast<size_t>(i)] -
               (1.0 - fs.K) * q3[static_cast<size_t>(i)]);

  // These two need K = 1 and the Bianchi identities, not just Eq-structure.
  add_form_components(rs, "L_Iw1_Jw3",
                      lie_derivative(fs.I * w1 + fs.J * w3, e2));
  rs.add("I2J2_deriv2",
         coframe_derivatives(fs.I * fs.I + fs.J * fs.J, cf).d2);
  rs.add("K_minus_1", fs.K - 1.0);
  rs.evaluate(pts);
  return rs;
}

ResidualSet lie_k1_checks(const FinslerStructure& fs, double tol) {
  return lie_k1_checks(fs, tol, default_grid(fs.coframe));
}

ResidualSet lie_surface_checks(const FinslerStructure& fs,
                               const ScalarField& m, double tol,
                               const std::vector<Point>& pts) {
  const Coframe& cf = fs.coframe;
  std::array<ScalarField, 3> e1 = dual_frame_vector(cf, 1);

  const KForm& w2 = cf.form(2);
  const KForm& w3 = cf.form(3);
  KForm mw2 = m * w2;
  KForm Lw2 = lie_derivative(w2, e1);
  KForm Lw3 = lie_derivative(w3, e1);
  KForm Lmw2 = lie_derivative(mw2, e1);

  ResidualSet rs(tol);
  add_form_components(rs, "Lw2_plus_w3", Lw2 + w3);
  add_form_components(rs, "Lw3_res", Lw3 - fs.K * w2 + fs.J * w3);

  // d/dt of (m w2)^2 + (w3)^2 along the flow, as a symmetric tensor.
  std::array<ScalarField, 6> t1 = symmetric_product(Lmw2, mw2);
  std::array<ScalarField, 6> t2 = symmetric_product(Lw3, w3);
  static const char* qname[] = {"s11", "s22", "s33", "s12", "s13", "s23"};
  for (int i = 0; i < 6; ++i)
    rs.add(std::string("metric_deriv_") + qname[i],
           2.0 * (t1[static_cast<size_t>(i)] + t2[static_cast<size_t>(i)]));

  rs.add("m_1", coframe_derivatives(m, cf).d1);
  rs.add("m2_minus_K", m * m - fs.K);
  rs.evaluate(pts);
  return rs;
}

ResidualSet lie_surface_checks(const FinslerStructure& fs,
                               const ScalarField& m, double tol) {
  return lie_surface_checks(fs, m, tol, default_grid(fs.coframe));
}

}  // namespace cartanforge
