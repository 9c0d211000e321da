#include "cartanforge/transforms.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cartanforge/expr.hpp"
#include "cartanforge/scenes.hpp"

namespace cartanforge {

namespace {

std::vector<Point> default_grid(const Coframe& cf) {
  return cf.domain().grid(6);
}

/// Smallest value of f over pts together with where it occurs.
std::pair<double, Point> min_over(const ScalarField& f,
                                  const std::vector<Point>& pts) {
  double best = std::numeric_limits<double>::infinity();
  Point where{0.0, 0.0, 0.0};
  for (const Point& p : pts) {
    const double v = f.value(p);
    if (v < best) {
      best = v;
      where = p;
    }
  }
  return {best, where};
}

void require_positive(const ScalarField& f, const std::vector<Point>& pts,
                      const std::string& what) {
  auto [v, p] = min_over(f, pts);
  if (!(v > 0.0))
    throw PreconditionError(what + " must be positive on the sample domain; " +
                            "minimum " + format_double_17(v) + " at " +
                            format_point(p));
}

}  // namespace

TransformMatrix::TransformMatrix(
    std::array<std::array<ScalarField, 3>, 3> entries)
    : a_(std::move(entries)),
      minors_{{{ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)},
               {ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)},
               {ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)}}} {
  for (int i = 0; i < 3; ++i) {
    const int r1 = (i + 1) % 3 < (i + 2) % 3 ? (i + 1) % 3 : (i + 2) % 3;
    const int r2 = (i + 1) % 3 < (i + 2) % 3 ? (i + 2) % 3 : (i + 1) % 3;
    for (int j = 0; j < 3; ++j) {
      const int c1 = (j + 1) % 3 < (j + 2) % 3 ? (j + 1) % 3 : (j + 2) % 3;
      const int c2 = (j + 1) % 3 < (j + 2) % 3 ? (j + 2) % 3 : (j + 1) % 3;
      minors_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          a_[static_cast<size_t>(r1)][static_cast<size_t>(c1)] *
              a_[static_cast<size_t>(r2)][static_cast<size_t>(c2)] -
          a_[static_cast<size_t>(r1)][static_cast<size_t>(c2)] *
              a_[static_cast<size_t>(r2)][static_cast<size_t>(c1)];
    }
  }
}

TransformMatrix TransformMatrix::identity() {
  ScalarField one(1.0), zero(0.0);
  return TransformMatrix({{{one, zero, zero}, {zero, one, zero},
                           {zero, zero, one}}});
}

const ScalarField& TransformMatrix::at(int i, int j) const {
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw std::out_of_range("matrix index out of range");
  return a_[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
}

const ScalarField& TransformMatrix::minor(int i, int j) const {
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw std::out_of_range("matrix index out of range");
  return minors_[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
}

ScalarField TransformMatrix::det() const {
  return at(1, 1) * minor(1, 1) - at(1, 2) * minor(1, 2) +
         at(1, 3) * minor(1, 3);
}

Coframe TransformMatrix::apply(const Coframe& base) const {
  auto row = [&](int i) {
    std::array<ScalarField, 3> c{ScalarField(0.0), ScalarField(0.0),
                                 ScalarField(0.0)};
    for (int k = 1; k <= 3; ++k) {
      ScalarField acc = at(i, 1) * base.component(1, k);
      for (int j = 2; j <= 3; ++j) acc = acc + at(i, j) * base.component(j, k);
      c[static_cast<size_t>(k - 1)] = acc;
    }
    return KForm::one_form(c[0], c[1], c[2]);
  };
  return Coframe(row(1), row(2), row(3), base.domain());
}

TransformMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("matrix is not valid JSON: ") + e.what());
  }
  std::array<std::array<ScalarField, 3>, 3> entries{
      {{ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)},
       {ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)},
       {ScalarField(0.0), ScalarField(0.0), ScalarField(0.0)}}};
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k) {
      const std::string key = "a" + std::to_string(i) + std::to_string(k);
      if (!j.contains(key) || !j.at(key).is_string())
        throw SceneError("matrix file needs a string entry '" + key + "'");
      entries[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] =
          parse_field(j.at(key).get<std::string>());
    }
  return TransformMatrix(std::move(entries));
}

TransformMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open matrix file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return matrix_from_json(buf.str());
}

ResidualSet first_order_relations(const TransformMatrix& A,
                             const CartanStructure& cs,
                             const FinslerStructure& fs, double tol,
                             const std::vector<Point>& pts) {
  const Coframe& al = cs.coframe;
  std::array<std::array<CoframeDerivatives, 3>, 3> d{
      {{coframe_derivatives(A.at(1, 1), al), coframe_derivatives(A.at(1, 2), al),
        coframe_derivatives(A.at(1, 3), al)},
       {coframe_derivatives(A.at(2, 1), al), coframe_derivatives(A.at(2, 2), al),
        coframe_derivatives(A.at(2, 3), al)},
       {coframe_derivatives(A.at(3, 1), al), coframe_derivatives(A.at(3, 2), al),
        coframe_derivatives(A.at(3, 3), al)}}};
  auto da = [&](int i, int j) -> const CoframeDerivatives& {
    return d[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
  };
  const ScalarField& R = cs.R;
  const ScalarField& I = fs.I;
  const ScalarField& J = fs.J;
  const ScalarField& K = fs.K;

  ResidualSet rs(tol);
  rs.add("a11_2", da(1, 1).d2 - da(1, 2).d1 - A.at(1, 3) * R - I * A.minor(2, 3)
                      + A.minor(1, 3));
  rs.add("a21_2", da(2, 1).d2 - da(2, 2).d1 - A.at(2, 3) * R - A.minor(2, 3));
  rs.add("a31_2", da(3, 1).d2 - da(3, 2).d1 - A.at(3, 3) * R + K * A.minor(3, 3)
                      - J * A.minor(2, 3));
  rs.add("a13_1", da(1, 3).d1 - da(1, 1).d3 - A.at(1, 2) + I * A.minor(2, 2)
                      - A.minor(1, 2));
  rs.add("a23_1", da(2, 3).d1 - da(2, 1).d3 - A.at(2, 2) + A.minor(2, 2));
  rs.add("a33_1", da(3, 3).d1 - da(3, 1).d3 - A.at(3, 2) - K * A.minor(3, 2)
                      + J * A.minor(2, 2));
  rs.add("a12_3", da(1, 2).d3 - da(1, 3).d2 - A.at(1, 1) - I * A.minor(2, 1)
                      + A.minor(1, 1));
  rs.add("a22_3", da(2, 2).d3 - da(2, 3).d2 - A.at(2, 1) - A.minor(2, 1));
  rs.add("a32_3", da(3, 2).d3 - da(3, 3).d2 - A.at(3, 1) + K * A.minor(3, 1)
                      - J * A.minor(2, 1));
  rs.evaluate(pts);
  return rs;
}

ResidualSet first_order_relations(const TransformMatrix& A,
                             const CartanStructure& cs,
                             const FinslerStructure& fs, double tol) {
  return first_order_relations(A, cs, fs, tol, default_grid(cs.coframe));
}

TorsionTriple torsion_terms(const TransformMatrix& A,
                            const CartanStructure& cs, const ScalarField& I,
                            const ScalarField& J, const ScalarField& K) {
  const Coframe& al = cs.coframe;
  auto row_div = [&](int i) {
    return coframe_derivatives(A.minor(i, 3), al).d3 +
           coframe_derivatives(A.minor(i, 1), al).d1 -
           coframe_derivatives(A.minor(i, 2), al).d2;
  };
  ScalarField D1 = row_div(1);
  ScalarField D2 = row_div(2);
  ScalarField D3 = row_div(3);
  CoframeDerivatives dI = coframe_derivatives(I, al);
  CoframeDerivatives dJ = coframe_derivatives(J, al);
  CoframeDerivatives dK = coframe_derivatives(K, al);

  ScalarField T13 = -D1 + I * D2 + (dI.d1 * A.minor(2, 1) -
                                    dI.d2 * A.minor(2, 2) +
                                    dI.d3 * A.minor(2, 3));
  ScalarField T23 = D2;
  ScalarField T33 = -K * D3 + J * D2 -
                    (dK.d1 * A.minor(3, 1) - dK.d2 * A.minor(3, 2) +
                     dK.d3 * A.minor(3, 3)) +
                    (dJ.d1 * A.minor(2, 1) - dJ.d2 * A.minor(2, 2) +
                     dJ.d3 * A.minor(2, 3));
  return {T13, T23, T33};
}

K1Result k1_transform(const FinslerStructure& fs, const ScalarField& m,
                      double tol, const std::vector<Point>& pts) {
  require_positive(m, pts, "the scaling");

  const Coframe& om = fs.coframe;
  CoframeDerivatives md = coframe_derivatives(m, om);
  ScalarField inv_m = 1.0 / m;
  KForm a1 = inv_m * om.form(1);
  KForm a2 = inv_m * om.form(3);
  ScalarField b21 = fs.I * m - md.d3;
  ScalarField b22 = md.d1 + fs.J * m;
  KForm a3 = b21 * a1 + b22 * a2 - om.form(2);
  Coframe alpha(a1, a2, a3, om.domain());

  CartanVerification ver = verify_cartan(alpha, tol, pts);

  ResidualSet rs(tol);
  rs.add("m_3", -md.d2);  // the base-coframe a3 direction is -e2 of omega
  rs.add("K_minus_1", fs.K - 1.0);

  // d phi = (R - m^2) a1^a2 - d(*d log m) for phi = m (I a1 + J a2).
  HodgeOperators hodge = hodge_laplacian(m, ver.structure);
  KForm phi = (m * fs.I) * a1 + (m * fs.J) * a2;
  KForm residual = exterior_derivative(phi) -
                   (ver.structure.R - m * m) * wedge(a1, a2) +
                   exterior_derivative(hodge.star_dlog);
  TwoFormExpansion e = expand_two_form(residual, alpha);
  rs.add("phi_c23", e.c23);
  rs.add("phi_c31", e.c31);
  rs.add("phi_c12", e.c12);

  if (m.is_constant() && std::abs(m.value({0.0, 0.0, 0.0}) - 1.0) < 1e-15) {
    ScalarField I2 = coframe_derivatives(fs.I, alpha).d2;
    ScalarField J1 = coframe_derivatives(fs.J, alpha).d1;
    rs.add("curvature_condition", ver.structure.R + I2 - J1 - 1.0);
  }
  rs.evaluate(pts);
  return {std::move(ver), std::move(rs)};
}

K1Result k1_transform(const FinslerStructure& fs, const ScalarField& m,
                      double tol) {
  return k1_transform(fs, m, tol, default_grid(fs.coframe));
}

FinslerStructure k1_projective(const CartanStructure& cs, int sign, double tol,
                               const std::vector<Point>& pts) {
  (void)tol;
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
  auto [rmin, where] = min_over(cs.R, pts);
  if (!(rmin > 0.0))
    throw PreconditionError(
        "the structure function must be positive for the projective scaling; "
        "minimum " + format_double_17(rmin) + " at " + format_point(where));

  const Coframe& al = cs.coframe;
  ScalarField m = double(sign) * sqrt(cs.R);
  CoframeDerivatives Rd = coframe_derivatives(cs.R, al);
  ScalarField denom = 2.0 * cs.R * sqrt(cs.R);
  ScalarField I = double(sign) * Rd.d2 / denom;
  ScalarField J = -double(sign) * Rd.d1 / denom;

  CoframeDerivatives md = coframe_derivatives(m, al);
  ScalarField b21 = I * m - md.d2 / m;
  ScalarField b22 = md.d1 / m + J * m;
  KForm w1 = m * al.form(1);
  KForm w2 = b21 * al.form(1) + b22 * al.form(2) - al.form(3);
  KForm w3 = m * al.form(2);
  return {Coframe(w1, w2, w3, al.domain()), I, J, ScalarField(1.0)};
}

FinslerStructure k1_projective(const CartanStructure& cs, int sign,
                               double tol) {
  return k1_projective(cs, sign, tol, default_grid(cs.coframe));
}

J0Result j0_identity_transform(const CartanStructure& cs, const ScalarField& m,
                               double tol, const std::vector<Point>& pts) {
  require_positive(abs(m), pts, "|m|");

  const Coframe& al = cs.coframe;
  CoframeDerivatives md = coframe_derivatives(m, al);
  ScalarField m_12 = coframe_derivatives(md.d1, al).d2;
  ScalarField m_22 = coframe_derivatives(md.d2, al).d2;

  KForm w1 = (-md.d2 / (m * m)) * al.form(1) + (1.0 / m) * al.form(3);
  KForm w2 = (1.0 / m) * al.form(1);
  KForm w3 = al.form(2);
  Coframe omega(w1, w2, w3, al.domain());

  ScalarField I = -2.0 * md.d2 / m;
  FinslerStructure out{omega, I, ScalarField(0.0), m * m};

  ResidualSet rs(tol);
  rs.add("m_3", md.d3);
  rs.add("m_12", m_12);
  rs.add("curvature_condition", cs.R - (1.0 - m_22 / m));
  rs.add("landsberg", coframe_derivatives(I, omega).d2);
  rs.evaluate(pts);
  return {std::move(out), std::move(rs)};
}

J0Result j0_identity_transform(const CartanStructure& cs, const ScalarField& m,
                               double tol) {
  return j0_identity_transform(cs, m, tol, default_grid(cs.coframe));
}

J0Result j0_conformal_transform(const CartanStructure& cs, const ScalarField& m,
                                const ScalarField& f, double tol,
                                const std::vector<Point>& pts) {
  require_positive(abs(m), pts, "|m|");
  require_positive(abs(f), pts, "|f|");

  const Coframe& al = cs.coframe;
  CoframeDerivatives md = coframe_derivatives(m, al);
  CoframeDerivatives fd = coframe_derivatives(f, al);
  ScalarField f_11 = coframe_derivatives(fd.d1, al).d1;
  ScalarField f_22 = coframe_derivatives(fd.d2, al).d2;
  ScalarField m_21 = coframe_derivatives(md.d2, al).d1;
  ScalarField m_22 = coframe_derivatives(md.d2, al).d2;
  ScalarField g = f / m;
  CoframeDerivatives gd = coframe_derivatives(g, al);

  KForm w1 = (gd.d2 / f) * al.form(1) + (-fd.d1 / (f * m)) * al.form(2) +
             (1.0 / m) * al.form(3);
  KForm w2 = g * al.form(1);
  KForm w3 = f * al.form(2);
  Coframe omega(w1, w2, w3, al.domain());

  ScalarField I = -2.0 * md.d2 / (f * m);
  FinslerStructure out{omega, I, ScalarField(0.0), m * m};

  ResidualSet rs(tol);
  rs.add("f_3", fd.d3);
  rs.add("m_3", md.d3);
  rs.add("f_over_m_3", gd.d3);
  rs.add("landsberg_condition", m_21 - (fd.d1 * md.d2 + fd.d2 * md.d1) / f);
  rs.add("curvature_condition",
         cs.R - f * f - (f_11 + f_22) / f + (fd.d1 * fd.d1 + fd.d2 * fd.d2) /
             (f * f) + (fd.d1 * md.d1 - fd.d2 * md.d2) / (f * m) + m_22 / m);
  rs.add("landsberg", coframe_derivatives(I, omega).d2);
  rs.evaluate(pts);
  return {std::move(out), std::move(rs)};
}

J0Result j0_conformal_transform(const CartanStructure& cs, const ScalarField& m,
                                const ScalarField& f, double tol) {
  return j0_conformal_transform(cs, m, f, tol, default_grid(cs.coframe));
}

CartanRecoveryResult recover_cartan(const FinslerStructure& fs, const ScalarField& m,
                             double tol, const std::vector<Point>& pts) {
  const Coframe& om = fs.coframe;
  CoframeDerivatives md = coframe_derivatives(m, om);
  ScalarField m_33 = coframe_derivatives(md.d3, om).d3;

  KForm e1 = m * om.form(2);
  KForm e2 = om.form(3);
  KForm e3 = m * om.form(1) + md.d3 * om.form(2);
  Coframe eta(e1, e2, e3, om.domain());

  CartanVerification ver = verify_cartan(eta, tol, pts);

  ResidualSet rs(tol);
  rs.add("m_1", md.d1);
  rs.add("m_sq_minus_K", m * m - fs.K);
  rs.add("R_formula", ver.structure.R - (1.0 - m_33 / m));
  rs.evaluate(pts);
  return {std::move(ver), std::move(rs)};
}

CartanRecoveryResult recover_cartan(const FinslerStructure& fs, const ScalarField& m,
                             double tol) {
  return recover_cartan(fs, m, tol, default_grid(fs.coframe));
}

namespace {

EdsReport eds_impl(const CartanStructure& cs, const ScalarField* m, double tol,
                   const std::vector<Point>& pts) {
  const Coframe& al = cs.coframe;
  const ScalarField& R = cs.R;
  CoframeDerivatives Rd = coframe_derivatives(R, al);
  ScalarField R_11 = coframe_derivatives(Rd.d1, al).d1;
  ScalarField R_12 = coframe_derivatives(Rd.d1, al).d2;
  ScalarField R_21 = coframe_derivatives(Rd.d2, al).d1;
  ScalarField R_22 = coframe_derivatives(Rd.d2, al).d2;

  ResidualSet rs(tol);
  rs.add("R_3", Rd.d3);
  rs.add("R_11_res", R_11 - (1.0 - R - Rd.d1 * Rd.d1));
  rs.add("R_12_res", R_12 + Rd.d1 * Rd.d2);
  rs.add("R_21_res", R_21 + Rd.d1 * Rd.d2);
  rs.add("R_22_res", R_22 - (1.0 - R - Rd.d2 * Rd.d2));
  if (m) {
    CoframeDerivatives md = coframe_derivatives(*m, al);
    ScalarField m_11 = coframe_derivatives(md.d1, al).d1;
    rs.add("t1", (*m) * Rd.d1 - md.d1);
    rs.add("t2", -m_11 + (*m) * (1.0 - R));
  }
  rs.evaluate(pts);

  ScalarField Q =
      (Rd.d1 * Rd.d1 + Rd.d2 * Rd.d2 + R - 1.5) * exp(2.0 * (R - 1.0));
  FieldStat q_stat = evaluate_stat(Q, pts);
  return {std::move(rs), std::move(Q), q_stat};
}

}  // namespace

EdsReport eds_residuals(const CartanStructure& cs, double tol,
                        const std::vector<Point>& pts) {
  return eds_impl(cs, nullptr, tol, pts);
}

EdsReport eds_residuals(const CartanStructure& cs, double tol) {
  return eds_impl(cs, nullptr, tol, default_grid(cs.coframe));
}

EdsReport eds_residuals(const CartanStructure& cs, const ScalarField& m,
                        double tol, const std::vector<Point>& pts) {
  return eds_impl(cs, &m, tol, pts);
}

FinslerStructure landsberg_from_cartan(const CartanStructure& cs, double C,
                                       double tol,
                                       const std::vector<Point>& pts) {
  if (C == 0.0)
    throw PreconditionError("the Landsberg scaling constant must be nonzero");
  EdsReport eds = eds_residuals(cs, tol, pts);
  if (!eds.pass())
    throw PreconditionError(
        "the structure function fails the compatibility system; worst "
        "residual " + format_double_17(eds.residuals.worst_sup()) +
        " exceeds tolerance " + format_double_17(tol));

  const Coframe& al = cs.coframe;
  ScalarField R_2 = coframe_derivatives(cs.R, al).d2;
  ScalarField scale = (1.0 / C) * exp(-cs.R);
  KForm w1 = scale * al.form(3) + (-scale * R_2) * al.form(1);
  KForm w2 = scale * al.form(1);
  KForm w3 = al.form(2);
  ScalarField I = -2.0 * R_2;
  ScalarField K = (C * C) * exp(2.0 * cs.R);
  return {Coframe(w1, w2, w3, al.domain()), I, ScalarField(0.0), K};
}

FinslerStructure landsberg_from_cartan(const CartanStructure& cs, double C,
                                       double tol) {
  return landsberg_from_cartan(cs, C, tol, default_grid(cs.coframe));
}

}  // namespace cartanforge
