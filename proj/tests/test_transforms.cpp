#include <doctest.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cartanforge/expr.hpp"
#include "cartanforge/scenes.hpp"
#include "cartanforge/structures.hpp"
#include "cartanforge/transforms.hpp"

using namespace cartanforge;

namespace {

CartanStructure verified(const Scene& scene, const std::vector<Point>& pts) {
  CartanVerification v = verify_cartan(scene_coframe(scene), 1e-8, pts);
  REQUIRE(v.report.pass());
  return v.structure;
}

/// The explicit matrix of the Landsberg-type change of coframe with C = 1,
/// rows (w1, w2, w3) against (a1, a2, a3).
TransformMatrix landsberg_matrix(const CartanStructure& cs) {
  ScalarField em = exp(-cs.R);
  ScalarField R2 = coframe_derivatives(cs.R, cs.coframe).d2;
  std::array<std::array<ScalarField, 3>, 3> rows = {{
      {{-em * R2, ScalarField(0.0), em}},
      {{em, ScalarField(0.0), ScalarField(0.0)}},
      {{ScalarField(0.0), ScalarField(1.0), ScalarField(0.0)}},
  }};
  return TransformMatrix(rows);
}

void check_coframes_match(const Coframe& a, const Coframe& b,
                          const std::vector<Point>& pts, double tol) {
  for (const Point& p : pts)
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        CHECK(std::abs(a.component(i, j).value(p) -
                       b.component(i, j).value(p)) < tol);
}

}  // namespace

TEST_CASE("transform matrix minors, determinant, apply") {
  auto c = [](double v) { return ScalarField(v); };
  std::array<std::array<ScalarField, 3>, 3> rows = {{
      {{c(1), c(2), c(0)}},
      {{c(0), c(1), c(3)}},
      {{c(4), c(0), c(1)}},
  }};
  TransformMatrix A(rows);
  Point p{0.3, 0.4, 0.5};
  CHECK(A.at(1, 2).value(p) == 2.0);
  CHECK(A.at(3, 1).value(p) == 4.0);
  // Minors are plain 2x2 subdeterminants, no cofactor sign.
  CHECK(A.minor(1, 1).value(p) == 1.0);
  CHECK(A.minor(1, 2).value(p) == -12.0);
  CHECK(A.minor(1, 3).value(p) == -4.0);
  CHECK(A.minor(2, 2).value(p) == 1.0);
  CHECK(A.minor(3, 2).value(p) == 3.0);
  CHECK(A.det().value(p) == 25.0);
  CHECK_THROWS_AS((void)A.at(0, 1), std::out_of_range);
  CHECK_THROWS_AS((void)A.minor(4, 1), std::out_of_range);

  TransformMatrix id = TransformMatrix::identity();
  CHECK(id.at(1, 1).value(p) == 1.0);
  CHECK(id.at(1, 2).value(p) == 0.0);
  CHECK(id.det().value(p) == 1.0);

  Coframe base = scene_coframe(sphere_bundle());
  Coframe moved = A.apply(base);
  ScalarField vb = volume_coefficient(base), vm = volume_coefficient(moved);
  for (const Point& q : base.domain().grid(3))
    CHECK(std::abs(vm.value(q) - 25.0 * vb.value(q)) < 1e-11);
}

TEST_CASE("matrix JSON loading") {
  const char* good = R"json({"a11":"1","a12":"r","a13":"0",
                             "a21":"0","a22":"1","a23":"0",
                             "a31":"sin(psi)","a32":"0","a33":"1"})json";
  TransformMatrix A = matrix_from_json(good);
  Point p{0.7, 0.2, 0.9};
  CHECK(A.at(1, 2).value(p) == 0.7);
  CHECK(std::abs(A.at(3, 1).value(p) - std::sin(0.9)) < 1e-15);

  const std::string path = "cartanforge_test_matrix.json";
  { std::ofstream(path) << good; }
  TransformMatrix B = load_matrix(path);
  CHECK(B.at(1, 2).value(p) == 0.7);
  CHECK_THROWS_AS(load_matrix("no_such_file_here.json"), SceneError);

  CHECK_THROWS_AS(matrix_from_json("{\"a11\":\"1\"}"), SceneError);
  CHECK_THROWS_AS(matrix_from_json("not json at all"), SceneError);
  // Structural problems are scene errors; expression syntax inside an entry
  // surfaces as a parse error with its location.
  CHECK_THROWS_AS(matrix_from_json(R"json({"a11":"1","a12":"r","a13":"0",
      "a21":"0","a22":"1","a23":"0",
      "a31":"2 +* 3","a32":"0","a33":"1"})json"),
                  ParseError);
}

TEST_CASE("identity matrix satisfies the first-order relations exactly") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  FinslerStructure fs{cs.coframe, ScalarField(0.0), ScalarField(0.0), cs.R};
  ResidualSet rs =
      first_order_relations(TransformMatrix::identity(), cs, fs, 1e-12, pts);
  CHECK(rs.pass());
  CHECK(rs.worst_sup() < 1e-12);
}

TEST_CASE("the Landsberg-type matrix satisfies the first-order relations") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  FinslerStructure fs = landsberg_from_cartan(cs, 1.0, 1e-7, pts);
  ResidualSet rs = first_order_relations(landsberg_matrix(cs), cs, fs, 1e-7, pts);
  CHECK(rs.pass());
  CHECK(rs.worst_sup() < 1e-9);
}

TEST_CASE("mismatched structures leave a visible first-order residual") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  FinslerStructure wrong{cs.coframe, ScalarField(0.0), ScalarField(0.0),
                         cs.R + ScalarField(0.5)};
  ResidualSet rs =
      first_order_relations(TransformMatrix::identity(), cs, wrong, 1e-8, pts);
  CHECK_FALSE(rs.pass());
  CHECK(rs.sup("a31_2") > 0.4);
}

TEST_CASE("torsion terms vanish for compatible data") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);

  TorsionTriple t0 = torsion_terms(TransformMatrix::identity(), cs,
                                   ScalarField(0.0), ScalarField(0.0), cs.R);
  for (const Point& p : pts) {
    CHECK(std::abs(t0.T13.value(p)) < 1e-10);
    CHECK(std::abs(t0.T23.value(p)) < 1e-10);
    CHECK(std::abs(t0.T33.value(p)) < 1e-10);
  }

  FinslerStructure fs = landsberg_from_cartan(cs, 1.0, 1e-7, pts);
  TorsionTriple tl =
      torsion_terms(landsberg_matrix(cs), cs, fs.I, fs.J, fs.K);
  for (const Point& p : pts) {
    CHECK(std::abs(tl.T13.value(p)) < 1e-9);
    CHECK(std::abs(tl.T23.value(p)) < 1e-9);
    CHECK(std::abs(tl.T33.value(p)) < 1e-9);
  }
}

TEST_CASE("torsion terms detect a fiber-dependent K") {
  Coframe cf = scene_coframe(sphere_bundle());
  auto pts = cf.domain().grid(3);
  CartanVerification v = verify_cartan(cf, 1e-8, pts);
  REQUIRE(v.report.pass());
  // With the identity matrix, T33 = -K_3; K = psi has K_3 = 1 on the bundle.
  TorsionTriple t = torsion_terms(TransformMatrix::identity(), v.structure,
                                  ScalarField(0.0), ScalarField(0.0),
                                  parse_field("psi"));
  for (const Point& p : pts) CHECK(std::abs(t.T33.value(p) + 1.0) < 1e-10);
}

TEST_CASE("unit-curvature inversion with m = 1 permutes the sphere coframe") {
  Coframe cf = scene_coframe(sphere_bundle());
  auto pts = cf.domain().grid(3);
  FinslerStructure fs = extract_invariants(cf, 1e-8, pts).structure;
  K1Result res = k1_transform(fs, ScalarField(1.0), 1e-7, pts);
  CHECK(res.pass());
  Coframe expected(cf.form(1), cf.form(3), -cf.form(2), cf.domain());
  check_coframes_match(res.verification.structure.coframe, expected, pts,
                       1e-9);
  CHECK(res.residuals.sup("K_minus_1") < 1e-10);
  CHECK(res.residuals.sup("curvature_condition") < 1e-9);
}

TEST_CASE("projective scaling of the sphere has I = J = 0, K = 1") {
  Coframe cf = scene_coframe(sphere_bundle());
  auto pts = cf.domain().grid(3);
  CartanVerification v = verify_cartan(cf, 1e-8, pts);
  REQUIRE(v.report.pass());
  FinslerStructure fs = k1_projective(v.structure, 1, 1e-8, pts);
  for (const Point& p : pts) {
    CHECK(std::abs(fs.I.value(p)) < 1e-10);
    CHECK(std::abs(fs.J.value(p)) < 1e-10);
    CHECK(std::abs(fs.K.value(p) - 1.0) < 1e-14);
    // With m = sqrt(1) = 1 the middle row collapses to -a3.
    for (int j = 1; j <= 3; ++j)
      CHECK(std::abs(fs.coframe.component(2, j).value(p) +
                     cf.component(3, j).value(p)) < 1e-10);
  }
  FinslerExtraction ex = extract_invariants(fs.coframe, 1e-7, pts);
  CHECK(ex.report.pass());
  for (const Point& p : pts)
    CHECK(std::abs(ex.structure.K.value(p) - 1.0) < 1e-9);

  CHECK_THROWS_AS(k1_projective(v.structure, 2, 1e-8, pts),
                  std::invalid_argument);
}

TEST_CASE("projective scaling rejects nonpositive curvature") {
  Coframe cf = scene_coframe(flat_bundle());
  auto pts = cf.domain().grid(3);
  CartanVerification v = verify_cartan(cf, 1e-8, pts);
  REQUIRE(v.report.pass());
  CHECK_THROWS_AS(k1_projective(v.structure, 1, 1e-8, pts),
                  PreconditionError);
}

TEST_CASE("projective scaling round trips through the inversion") {
  Scene scene = family_bundle(1.25);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  FinslerStructure fs = k1_projective(cs, 1, 1e-7, pts);
  K1Result back = k1_transform(fs, sqrt(cs.R), 1e-6, pts);
  CHECK(back.pass());
  check_coframes_match(back.verification.structure.coframe, cs.coframe, pts,
                       1e-9);
  for (const Point& p : pts)
    CHECK(std::abs(back.verification.structure.R.value(p) - cs.R.value(p)) <
          1e-8);
}

TEST_CASE("flag-curvature-m^2 change with m = 1 permutes the sphere coframe") {
  Coframe cf = scene_coframe(sphere_bundle());
  auto pts = cf.domain().grid(3);
  CartanVerification v = verify_cartan(cf, 1e-8, pts);
  REQUIRE(v.report.pass());
  J0Result res = j0_identity_transform(v.structure, ScalarField(1.0), 1e-8,
                                       pts);
  CHECK(res.pass());
  Coframe expected(cf.form(3), cf.form(1), cf.form(2), cf.domain());
  check_coframes_match(res.structure.coframe, expected, pts, 1e-10);
  for (const Point& p : pts) {
    CHECK(std::abs(res.structure.I.value(p)) < 1e-12);
    CHECK(std::abs(res.structure.K.value(p) - 1.0) < 1e-12);
  }
}

TEST_CASE("m = e^R reproduces the Landsberg construction") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  J0Result viaj0 = j0_identity_transform(cs, exp(cs.R), 1e-7, pts);
  CHECK(viaj0.pass());
  FinslerStructure viaeds = landsberg_from_cartan(cs, 1.0, 1e-7, pts);
  check_coframes_match(viaj0.structure.coframe, viaeds.coframe, pts, 1e-9);
  for (const Point& p : pts) {
    CHECK(std::abs(viaj0.structure.I.value(p) - viaeds.I.value(p)) < 1e-9);
    CHECK(std::abs(viaj0.structure.K.value(p) - viaeds.K.value(p)) < 1e-9);
  }
}

TEST_CASE("a scaling with mixed derivative is flagged") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  J0Result res =
      j0_identity_transform(cs, parse_field("exp(r*theta/10)"), 1e-8, pts);
  CHECK_FALSE(res.pass());
  CHECK(res.residuals.sup("m_12") > 1e-3);
}

TEST_CASE("the conformal change with f = 1 reduces to the identity-factor one") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  ScalarField m = exp(cs.R);
  J0Result plain = j0_identity_transform(cs, m, 1e-7, pts);
  J0Result conf = j0_conformal_transform(cs, m, ScalarField(1.0), 1e-7, pts);
  CHECK(conf.pass());
  check_coframes_match(plain.structure.coframe, conf.structure.coframe, pts,
                       1e-11);
  for (const Point& p : pts) {
    CHECK(std::abs(plain.structure.I.value(p) - conf.structure.I.value(p)) <
          1e-11);
    CHECK(std::abs(plain.structure.K.value(p) - conf.structure.K.value(p)) <
          1e-11);
  }
}

TEST_CASE("conformal obstruction identity: I_2 = -(2/f^2) * obstruction") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  ScalarField f = parse_field("exp(theta/7)");
  J0Result res = j0_conformal_transform(cs, exp(cs.R), f, 1e-8, pts);
  const ScalarField& lb = res.residuals.entry("landsberg").field;
  const ScalarField& lc = res.residuals.entry("landsberg_condition").field;
  bool nontrivial = false;
  for (const Point& p : pts) {
    double fv = f.value(p);
    double want = -2.0 / (fv * fv) * lc.value(p);
    CHECK(std::abs(lb.value(p) - want) < 1e-11);
    if (std::abs(lc.value(p)) > 1e-3) nontrivial = true;
  }
  CHECK(nontrivial);  // the identity is exercised away from zero
}

TEST_CASE("surface reconstruction inverts the Landsberg construction") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  for (double C : {1.0, 2.5}) {
    FinslerStructure fs = landsberg_from_cartan(cs, C, 1e-7, pts);
    CartanRecoveryResult rec = recover_cartan(fs, C * exp(cs.R), 1e-6, pts);
    CHECK(rec.pass());
    CHECK(rec.residuals.sup("m_sq_minus_K") < 1e-10);
    CHECK(rec.residuals.sup("R_formula") < 1e-7);
    check_coframes_match(rec.verification.structure.coframe, cs.coframe, pts,
                         1e-8);
  }
}

TEST_CASE("surface reconstruction flags a scaling with m^2 != K") {
  Scene scene = family_bundle(1.5);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  FinslerStructure fs = landsberg_from_cartan(cs, 1.0, 1e-7, pts);
  CartanRecoveryResult rec = recover_cartan(fs, 1.1 * exp(cs.R), 1e-8, pts);
  CHECK_FALSE(rec.pass());
  CHECK(rec.residuals.sup("m_sq_minus_K") > 1e-2);
}

TEST_CASE("compatibility system and conserved combination on the family") {
  struct Case {
    double R0, q;
  };
  // Q = (R0 - 3/2) e^{2 (R0 - 1)} is constant in r for these members.
  for (Case c : {Case{1.25, -0.25 * std::exp(0.5)}, Case{1.5, 0.0},
                 Case{2.0, 0.5 * std::exp(2.0)}}) {
    Scene scene = family_bundle(c.R0);
    auto pts = scene.domain.grid(3);
    CartanStructure cs = verified(scene, pts);
    EdsReport eds = eds_residuals(cs, 1e-8, pts);
    CHECK(eds.pass());
    CHECK(eds.q_spread() < 1e-9);
    CHECK(std::abs(eds.q_stat.max_value - c.q) < 1e-9);
  }
}

TEST_CASE("scaling compatibility terms vanish for m = C e^R") {
  Scene scene = family_bundle(2.0);
  auto pts = scene.domain.grid(3);
  CartanStructure cs = verified(scene, pts);
  EdsReport eds = eds_residuals(cs, 3.0 * exp(cs.R), 1e-8, pts);
  CHECK(eds.pass());
  CHECK(eds.residuals.sup("t1") < 1e-9);
  CHECK(eds.residuals.sup("t2") < 1e-9);
}

TEST_CASE("Landsberg construction on the sphere scales K with C^2") {
  Coframe cf = scene_coframe(sphere_bundle());
  auto pts = cf.domain().grid(3);
  CartanVerification v = verify_cartan(cf, 1e-8, pts);
  REQUIRE(v.report.pass());

  FinslerStructure one = landsberg_from_cartan(v.structure, 1.0, 1e-7, pts);
  FinslerStructure two = landsberg_from_cartan(v.structure, 2.0, 1e-7, pts);
  double e2 = std::exp(2.0);
  for (const Point& p : pts) {
    CHECK(std::abs(one.I.value(p)) < 1e-10);
    CHECK(std::abs(one.J.value(p)) < 1e-15);
    CHECK(std::abs(one.K.value(p) - e2) < 1e-9);
    CHECK(std::abs(two.K.value(p) - 4.0 * e2) < 1e-8);
  }
  FinslerExtraction ex = extract_invariants(one.coframe, 1e-6, pts);
  CHECK(ex.report.pass());
  for (const Point& p : pts)
    CHECK(std::abs(ex.structure.K.value(p) - e2) < 1e-8);
}

TEST_CASE("Landsberg construction refuses incompatible inputs") {
  Coframe cf = scene_coframe(flat_bundle());
  auto pts = cf.domain().grid(3);
  CartanVerification v = verify_cartan(cf, 1e-8, pts);
  REQUIRE(v.report.pass());
  CHECK_THROWS_AS(landsberg_from_cartan(v.structure, 1.0, 1e-8, pts),
                  PreconditionError);

  Coframe sph = scene_coframe(sphere_bundle());
  CartanVerification vs = verify_cartan(sph, 1e-8, pts);
  CHECK_THROWS_AS(landsberg_from_cartan(vs.structure, 0.0, 1e-8, pts),
                  PreconditionError);
}
