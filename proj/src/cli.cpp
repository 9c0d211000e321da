#include "cartanforge/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cartanforge/expr.hpp"
#include "cartanforge/scenes.hpp"
#include "cartanforge/structures.hpp"
#include "cartanforge/transforms.hpp"

namespace cartanforge {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw SceneError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw SceneError("write to " + path + " failed");
}

void validate(const CommandConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (cfg.samples < 2)
    throw std::invalid_argument("need at least 2 grid samples per axis");
  if (cfg.random_points < 0)
    throw std::invalid_argument("random point count must be nonnegative");
}

std::vector<Point> sample_points(const CommandConfig& cfg, const Box& box,
                                 Json& sampling) {
  if (cfg.random_points > 0) {
    sampling = Json::object()
                   .add("mode", Json::string("random"))
                   .add("count", Json::integer(cfg.random_points))
                   .add("seed", Json::integer(static_cast<std::int64_t>(cfg.seed)));
    return box.random(cfg.random_points, cfg.seed);
  }
  sampling = Json::object()
                 .add("mode", Json::string("grid"))
                 .add("per_axis", Json::integer(cfg.samples))
                 .add("seed", Json::integer(static_cast<std::int64_t>(cfg.seed)));
  return box.grid(cfg.samples);
}

Json box_json(const Box& b) {
  Json lo = Json::array(), hi = Json::array();
  for (size_t a = 0; a < 3; ++a) {
    lo.push(Json::number(b.lo[a]));
    hi.push(Json::number(b.hi[a]));
  }
  return Json::object().add("lo", std::move(lo)).add("hi", std::move(hi));
}

Json envelope(const CommandConfig& cfg) {
  return Json::object().add("command", Json::string(cfg.subcommand));
}

SurfaceOfRevolution make_surface(const CommandConfig& cfg) {
  if (cfg.profile.empty() || cfg.profile == "family")
    return SurfaceOfRevolution::family(cfg.R0);
  if (cfg.profile == "sphere")
    return SurfaceOfRevolution::from_profile("sphere", "sin(c1)", "cos(c1)");
  if (cfg.profile == "flat")
    return SurfaceOfRevolution::from_profile("flat", "1", "0");
  throw std::invalid_argument("unknown profile '" + cfg.profile +
                              "' (expected family, sphere, or flat)");
}

struct TrajectoryStats {
  double F0, E0, F_drift, E_drift;
};

TrajectoryStats drift_stats(const Trajectory& traj) {
  TrajectoryStats st{traj.F.front(), traj.E.front(), 0.0, 0.0};
  for (size_t i = 0; i < traj.F.size(); ++i) {
    st.F_drift = std::max(st.F_drift, std::abs(traj.F[i] - st.F0));
    st.E_drift = std::max(st.E_drift, std::abs(traj.E[i] - st.E0));
  }
  return st;
}

Json trajectory_json(const Trajectory& traj, const TrajectoryStats& st) {
  return Json::object()
      .add("samples", Json::integer(static_cast<std::int64_t>(traj.t.size())))
      .add("t_final", Json::number(traj.t.back()))
      .add("final_state", Json::object()
                              .add("r", Json::number(traj.state.back().r))
                              .add("theta", Json::number(traj.state.back().theta))
                              .add("rdot", Json::number(traj.state.back().rdot))
                              .add("thetadot",
                                   Json::number(traj.state.back().thetadot)))
      .add("F0", Json::number(st.F0))
      .add("E0", Json::number(st.E0))
      .add("F_drift", Json::number(st.F_drift))
      .add("E_drift", Json::number(st.E_drift));
}

RunReport run_verify(const CommandConfig& cfg) {
  Scene scene = resolve_scene(cfg.coframe_uri);
  Coframe cf = scene_coframe(scene);
  Json sampling;
  std::vector<Point> pts = sample_points(cfg, cf.domain(), sampling);

  RunReport rep;
  rep.payload = envelope(cfg)
                    .add("scene", Json::string(scene.name))
                    .add("kind", Json::string(cfg.kind))
                    .add("domain", box_json(cf.domain()))
                    .add("sampling", std::move(sampling));
  if (cfg.kind == "cartan") {
    CartanVerification v = verify_cartan(cf, cfg.tol, pts);
    rep.pass = v.report.pass();
    rep.payload.add("report", v.report.to_json());
  } else if (cfg.kind == "finsler") {
    FinslerExtraction x = extract_invariants(cf, cfg.tol, pts);
    rep.pass = x.report.pass();
    rep.payload.add("report", x.report.to_json());
  } else {
    throw std::invalid_argument("unknown kind '" + cfg.kind +
                                "' (expected cartan or finsler)");
  }
  rep.payload.add("pass", Json::boolean(rep.pass));
  return rep;
}

RunReport run_bianchi(const CommandConfig& cfg) {
  Scene scene = resolve_scene(cfg.coframe_uri);
  Coframe cf = scene_coframe(scene);
  Json sampling;
  std::vector<Point> pts = sample_points(cfg, cf.domain(), sampling);

  FinslerExtraction x = extract_invariants(cf, cfg.tol, pts);
  ResidualSet bianchi = check_bianchi(x.structure, cfg.tol, pts);

  RunReport rep;
  rep.pass = x.report.pass() && bianchi.pass();
  rep.payload = envelope(cfg)
                    .add("scene", Json::string(scene.name))
                    .add("sampling", std::move(sampling))
                    .add("extraction", x.report.to_json())
                    .add("bianchi", bianchi.to_json())
                    .add("pass", Json::boolean(rep.pass));
  return rep;
}

RunReport run_eds(const CommandConfig& cfg) {
  Scene scene = resolve_scene(cfg.coframe_uri);
  Coframe cf = scene_coframe(scene);
  Json sampling;
  std::vector<Point> pts = sample_points(cfg, cf.domain(), sampling);

  CartanVerification v = verify_cartan(cf, cfg.tol, pts);
  EdsReport eds = cfg.m_expr.empty()
                      ? eds_residuals(v.structure, cfg.tol, pts)
                      : eds_residuals(v.structure, parse_field(cfg.m_expr),
                                      cfg.tol, pts);

  RunReport rep;
  rep.pass = v.report.pass() && eds.pass();
  rep.payload = envelope(cfg)
                    .add("scene", Json::string(scene.name))
                    .add("sampling", std::move(sampling))
                    .add("verification", v.report.to_json())
                    .add("eds", eds.residuals.to_json())
                    .add("Q", Json::object()
                                  .add("min", Json::number(eds.q_stat.min_value))
                                  .add("max", Json::number(eds.q_stat.max_value))
                                  .add("spread", Json::number(eds.q_spread())))
                    .add("pass", Json::boolean(rep.pass));
  return rep;
}

RunReport run_transform(const CommandConfig& cfg) {
  Scene scene = resolve_scene(cfg.coframe_uri);
  Coframe cf = scene_coframe(scene);
  Json sampling;
  std::vector<Point> pts = sample_points(cfg, cf.domain(), sampling);

  RunReport rep;
  rep.payload = envelope(cfg)
                    .add("case", Json::string(cfg.transform_case))
                    .add("scene", Json::string(scene.name))
                    .add("sampling", std::move(sampling));

  if (cfg.transform_case == "landsberg") {
    CartanVerification v = verify_cartan(cf, cfg.tol, pts);
    FinslerStructure ls = landsberg_from_cartan(v.structure, cfg.C, cfg.tol, pts);
    FinslerExtraction x = extract_invariants(ls.coframe, cfg.tol, pts);
    ResidualSet extra(cfg.tol);
    extra.add("I_formula", x.structure.I - ls.I);
    extra.add("J", x.structure.J);
    extra.add("K_formula", x.structure.K - ls.K);
    extra.add("landsberg", coframe_derivatives(x.structure.I, ls.coframe).d2);
    extra.evaluate(pts);
    ResidualSet bianchi = check_bianchi(x.structure, cfg.tol, pts);
    rep.pass = v.report.pass() && x.report.pass() && extra.pass() &&
               bianchi.pass();
    rep.payload.add("verification", v.report.to_json())
        .add("extraction", x.report.to_json())
        .add("checks", extra.to_json())
        .add("bianchi", bianchi.to_json());
  } else if (cfg.transform_case == "j0-id" ||
             cfg.transform_case == "j0-conformal") {
    if (cfg.m_expr.empty())
      throw std::invalid_argument("this case needs --m <expression>");
    CartanVerification v = verify_cartan(cf, cfg.tol, pts);
    ScalarField m = parse_field(cfg.m_expr);
    J0Result j0 = cfg.transform_case == "j0-id"
                      ? j0_identity_transform(v.structure, m, cfg.tol, pts)
                      : j0_conformal_transform(
                            v.structure, m,
                            parse_field(cfg.f_expr.empty() ? "1" : cfg.f_expr),
                            cfg.tol, pts);
    FinslerExtraction x = extract_invariants(j0.structure.coframe, cfg.tol, pts);
    rep.pass = v.report.pass() && j0.pass() && x.report.pass();
    rep.payload.add("verification", v.report.to_json())
        .add("residuals", j0.residuals.to_json())
        .add("extraction", x.report.to_json());
  } else if (cfg.transform_case == "k1-id") {
    FinslerExtraction x = extract_invariants(cf, cfg.tol, pts);
    ScalarField m = parse_field(cfg.m_expr.empty() ? "1" : cfg.m_expr);
    K1Result k1 = k1_transform(x.structure, m, cfg.tol, pts);
    rep.pass = x.report.pass() && k1.pass();
    rep.payload.add("extraction", x.report.to_json())
        .add("verification", k1.verification.report.to_json())
        .add("residuals", k1.residuals.to_json());
  } else if (cfg.transform_case == "k1-projective") {
    CartanVerification v = verify_cartan(cf, cfg.tol, pts);
    FinslerStructure proj = k1_projective(v.structure, cfg.sign, cfg.tol, pts);
    FinslerExtraction x = extract_invariants(proj.coframe, cfg.tol, pts);
    ResidualSet extra(cfg.tol);
    extra.add("K_minus_1", x.structure.K - 1.0);
    extra.add("I_formula", x.structure.I - proj.I);
    extra.add("J_formula", x.structure.J - proj.J);
    extra.evaluate(pts);
    ResidualSet lie = lie_k1_checks(proj, cfg.tol, pts);
    rep.pass = v.report.pass() && x.report.pass() && extra.pass() && lie.pass();
    rep.payload.add("verification", v.report.to_json())
        .add("extraction", x.report.to_json())
        .add("checks", extra.to_json())
        .add("lie", lie.to_json());
  } else if (cfg.transform_case == "torsion") {
    CartanVerification v = verify_cartan(cf, cfg.tol, pts);
    TransformMatrix A = cfg.matrix_path.empty() ? TransformMatrix::identity()
                                                : load_matrix(cfg.matrix_path);
    Coframe omega = A.apply(cf);
    FinslerExtraction x = extract_invariants(omega, cfg.tol, pts);
    ResidualSet first_order = first_order_relations(A, v.structure, x.structure, cfg.tol,
                                          pts);
    TorsionTriple tt = torsion_terms(A, v.structure, x.structure.I,
                                     x.structure.J, x.structure.K);
    ResidualSet torsion(cfg.tol);
    torsion.add("T13", tt.T13);
    torsion.add("T23", tt.T23);
    torsion.add("T33", tt.T33);
    torsion.evaluate(pts);
    rep.pass = v.report.pass() && x.report.pass() && first_order.pass() &&
               torsion.pass();
    rep.payload.add("verification", v.report.to_json())
        .add("extraction", x.report.to_json())
        .add("first_order", first_order.to_json())
        .add("torsion", torsion.to_json());
  } else {
    throw std::invalid_argument(
        "unknown case '" + cfg.transform_case +
        "' (expected landsberg, j0-id, j0-conformal, k1-id, k1-projective, "
        "or torsion)");
  }
  rep.payload.add("pass", Json::boolean(rep.pass));
  return rep;
}

RunReport run_geodesic(const CommandConfig& cfg, bool with_beta) {
  SurfaceOfRevolution s = make_surface(cfg);
  GeodesicState init = launch_state(s, cfg.r0, cfg.theta0, cfg.psi0);
  Trajectory traj;
  if (with_beta) {
    ScalarField br = parse_field(cfg.beta_r_expr);
    ScalarField bt = parse_field(cfg.beta_theta_expr);
    traj = integrate_beta_geodesic(s, br, bt, init, cfg.t_end, cfg.step,
                                   cfg.stride);
  } else {
    traj = integrate_geodesic(s, init, cfg.t_end, cfg.step, cfg.stride);
  }
  TrajectoryStats st = drift_stats(traj);

  RunReport rep;
  // Energy is conserved in both regimes; the Clairaut integral only without
  // forcing.
  rep.pass = st.E_drift <= cfg.tol && (with_beta || st.F_drift <= cfg.tol);
  rep.payload = envelope(cfg)
                    .add("surface", Json::string(s.name()))
                    .add("initial",
                         Json::object()
                             .add("r", Json::number(init.r))
                             .add("theta", Json::number(init.theta))
                             .add("rdot", Json::number(init.rdot))
                             .add("thetadot", Json::number(init.thetadot)))
                    .add("t_end", Json::number(cfg.t_end))
                    .add("step", Json::number(cfg.step))
                    .add("trajectory", trajectory_json(traj, st))
                    .add("pass", Json::boolean(rep.pass));
  if (!cfg.out_path.empty()) {
    if (cfg.format == "csv")
      export_csv(traj, cfg.out_path);
    else
      write_text(cfg.out_path, rep.payload.dump() + "\n");
  }
  return rep;
}

RunReport run_prime_integral(const CommandConfig& cfg) {
  SurfaceOfRevolution s = make_surface(cfg);
  GeodesicState init = launch_state(s, cfg.r0, cfg.theta0, cfg.psi0);
  Trajectory traj = integrate_geodesic(s, init, cfg.t_end, cfg.step, cfg.stride);
  PrimeIntegralReport pr = prime_integral_check(s, traj);

  RunReport rep;
  rep.payload = envelope(cfg).add("surface", Json::string(s.name()));
  if (pr.meridian) {
    rep.pass = pr.sup_R1eR <= cfg.tol;
    rep.payload.add("meridian", Json::boolean(true))
        .add("sup_R1eR", Json::number(pr.sup_R1eR));
  } else {
    const double e32 = std::exp(1.5);
    const double mag = std::abs(pr.rho_mean);
    const double err_full = std::abs(mag - e32) / e32;
    const double err_half = std::abs(mag - e32 / 2.0) / (e32 / 2.0);
    rep.pass = pr.spread() <= cfg.tol && pr.rho_max < 0.0;
    rep.payload.add("meridian", Json::boolean(false))
        .add("rho",
             Json::object()
                 .add("min", Json::number(pr.rho_min))
                 .add("max", Json::number(pr.rho_max))
                 .add("mean", Json::number(pr.rho_mean))
                 .add("spread", Json::number(pr.spread())))
        .add("magnitude_vs",
             Json::object()
                 .add("e_3_2", Json::number(err_full))
                 .add("e_3_2_over_2", Json::number(err_half))
                 .add("matches", Json::string(err_half < err_full
                                                  ? "e^{3/2}/2"
                                                  : "e^{3/2}")));
  }
  rep.payload.add("pass", Json::boolean(rep.pass));
  return rep;
}

RunReport run_extent(const CommandConfig& cfg) {
  RunReport rep;
  rep.payload = envelope(cfg).add("R0", Json::number(cfg.R0));
  if (cfg.R0 >= 1.5) {
    if (!(cfg.R0 > 1.0))
      throw PreconditionError("curvature family needs R0 > 1");
    rep.pass = true;
    rep.payload.add("extent", Json::string("infinite"));
  } else {
    SurfaceOfRevolution s = SurfaceOfRevolution::family(cfg.R0);
    const double T = domain_extent(cfg.R0);
    double interior_min = std::numeric_limits<double>::infinity();
    const int n = 1000;
    for (int i = 1; i <= n; ++i)
      interior_min =
          std::min(interior_min, s.profile_sq(T * double(i) / double(n + 1)));
    const double at_end = std::abs(s.profile_sq(T));
    rep.pass = at_end < 1e-12 && interior_min > 0.0;
    rep.payload.add("extent", Json::number(T))
        .add("profile_sq_at_extent", Json::number(at_end))
        .add("interior_min", Json::number(interior_min));
  }
  rep.payload.add("pass", Json::boolean(rep.pass));
  return rep;
}

RunReport run_scan_f(const CommandConfig& cfg) {
  ScanMinimum sm = scan_profile_minimum(cfg.lo, cfg.hi);
  RunReport rep;
  rep.pass = true;
  rep.payload = envelope(cfg)
                    .add("lo", Json::number(cfg.lo))
                    .add("hi", Json::number(cfg.hi))
                    .add("argmin", Json::number(sm.argmin))
                    .add("value", Json::number(sm.value))
                    .add("pass", Json::boolean(true));
  return rep;
}

RunReport run_scene(const CommandConfig& cfg) {
  if (cfg.out_path.empty())
    throw std::invalid_argument("scene needs --out <path>");
  Scene scene = resolve_scene("builtin:" + cfg.scene_name);
  save_scene(scene, cfg.out_path);
  Scene back = load_scene(cfg.out_path);  // round-trip sanity
  RunReport rep;
  rep.pass = back.name == scene.name;
  rep.payload = envelope(cfg)
                    .add("scene", Json::string(scene.name))
                    .add("path", Json::string(cfg.out_path))
                    .add("pass", Json::boolean(rep.pass));
  return rep;
}

}  // namespace

RunReport run_command(const CommandConfig& cfg) {
  validate(cfg);
  if (cfg.subcommand == "verify") return run_verify(cfg);
  if (cfg.subcommand == "invariants") {
    CommandConfig c = cfg;
    c.kind = "finsler";
    RunReport rep = run_verify(c);
    return rep;
  }
  if (cfg.subcommand == "bianchi") return run_bianchi(cfg);
  if (cfg.subcommand == "eds") return run_eds(cfg);
  if (cfg.subcommand == "transform") return run_transform(cfg);
  if (cfg.subcommand == "geodesic") return run_geodesic(cfg, false);
  if (cfg.subcommand == "beta-geodesic") return run_geodesic(cfg, true);
  if (cfg.subcommand == "prime-integral") return run_prime_integral(cfg);
  if (cfg.subcommand == "extent") return run_extent(cfg);
  if (cfg.subcommand == "scan-f") return run_scan_f(cfg);
  if (cfg.subcommand == "scene") return run_scene(cfg);
  throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
}

void export_csv(const Trajectory& traj, std::ostream& out) {
  if (traj.t.empty()) throw std::invalid_argument("empty trajectory");
  out << "t,r,theta,rdot,thetadot,F,E\n";
  for (size_t i = 0; i < traj.t.size(); ++i) {
    const GeodesicState& s = traj.state[i];
    out << format_double_17(traj.t[i]) << ',' << format_double_17(s.r) << ','
        << format_double_17(s.theta) << ',' << format_double_17(s.rdot) << ','
        << format_double_17(s.thetadot) << ',' << format_double_17(traj.F[i])
        << ',' << format_double_17(traj.E[i]) << '\n';
  }
}

void export_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SceneError("cannot open " + path + " for writing");
  export_csv(traj, out);
  if (!out) throw SceneError("write to " + path + " failed");
}

int run_cli(int argc, char** argv) {
  CommandConfig cfg;
  CLI::App app{"structure-equation toolkit for coframes on 3-manifold charts"};
  app.require_subcommand(1);

  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "residual tolerance");
    sub->add_option("--samples", cfg.samples, "grid points per axis");
    sub->add_option("--random", cfg.random_points,
                    "use this many random sample points instead of the grid");
    return sub->add_option("--seed", cfg.seed, "random sampling seed");
  };
  std::vector<CLI::Option*> seed_opts;
  auto add_coframe = [&](CLI::App* sub, bool cartan_alias = false) {
    const char* names = cartan_alias ? "--cartan,--coframe" : "--coframe";
    sub->add_option(names, cfg.coframe_uri,
                    "scene file path or builtin:<name> URI")
        ->required();
  };

  CLI::App* verify = app.add_subcommand("verify", "check structure equations");
  add_coframe(verify);
  verify->add_option("--kind", cfg.kind, "cartan or finsler");
  seed_opts.push_back(add_sampling(verify));

  CLI::App* invariants =
      app.add_subcommand("invariants", "extract structure invariants");
  add_coframe(invariants);
  seed_opts.push_back(add_sampling(invariants));

  CLI::App* bianchi =
      app.add_subcommand("bianchi", "check the differential consequences of "
                                    "the structure equations");
  add_coframe(bianchi);
  seed_opts.push_back(add_sampling(bianchi));

  CLI::App* eds = app.add_subcommand(
      "eds", "second-order compatibility system for the structure function");
  add_coframe(eds);
  eds->add_option("--m", cfg.m_expr, "optional scaling expression");
  seed_opts.push_back(add_sampling(eds));

  CLI::App* transform =
      app.add_subcommand("transform", "build and check coframe changes");
  add_coframe(transform, true);
  transform->add_option("--case", cfg.transform_case,
                        "landsberg | j0-id | j0-conformal | k1-id | "
                        "k1-projective | torsion")
      ->required();
  transform->add_option("--C", cfg.C, "scaling constant");
  transform->add_option("--sign", cfg.sign, "projective sign, +1 or -1");
  transform->add_option("--m", cfg.m_expr, "scaling expression");
  transform->add_option("--f", cfg.f_expr, "conformal factor expression");
  transform->add_option("--matrix", cfg.matrix_path,
                        "JSON file with entries a11..a33");
  seed_opts.push_back(add_sampling(transform));

  auto add_flow = [&](CLI::App* sub) {
    sub->add_option("--R0", cfg.R0, "curvature family parameter");
    sub->add_option("--profile", cfg.profile, "family | sphere | flat");
    sub->add_option("--r0", cfg.r0, "initial radius");
    sub->add_option("--theta0", cfg.theta0, "initial angle");
    sub->add_option("--psi0", cfg.psi0, "launch direction");
    sub->add_option("--t-end", cfg.t_end, "integration time");
    sub->add_option("--step", cfg.step, "integration step");
    sub->add_option("--stride", cfg.stride, "record every n-th step");
    sub->add_option("--tol", cfg.tol, "conservation tolerance");
    sub->add_option("--out", cfg.out_path, "artifact path");
    sub->add_option("--format", cfg.format, "json or csv");
  };

  CLI::App* geo = app.add_subcommand("geodesic", "integrate geodesic flow");
  add_flow(geo);

  CLI::App* beta =
      app.add_subcommand("beta-geodesic",
                         "integrate flow with prescribed geodesic curvature");
  add_flow(beta);
  beta->add_option("--beta-r", cfg.beta_r_expr, "curvature 1-form on dr");
  beta->add_option("--beta-theta", cfg.beta_theta_expr,
                   "curvature 1-form on dtheta");

  CLI::App* prime = app.add_subcommand(
      "prime-integral", "pointwise first-integral ratio along a geodesic");
  add_flow(prime);

  CLI::App* extent =
      app.add_subcommand("extent", "valid radial interval of a family member");
  extent->add_option("--R0", cfg.R0, "curvature family parameter")->required();

  CLI::App* scan = app.add_subcommand(
      "scan-f", "minimum of the conserved-quantity profile f(R)");
  scan->add_option("--lo", cfg.lo, "scan lower end");
  scan->add_option("--hi", cfg.hi, "scan upper end");

  CLI::App* scene =
      app.add_subcommand("scene", "write a built-in scene to a coframe file");
  scene->add_option("--name", cfg.scene_name, "sphere | flat | r0=<value>")
      ->required();
  scene->add_option("--out", cfg.out_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // Seed precedence: flag, then CARTAN_FORGE_SEED, then 0.
  bool seed_given = false;
  for (CLI::Option* o : seed_opts)
    if (o && o->count() > 0) seed_given = true;
  if (!seed_given) {
    if (const char* env = std::getenv("CARTAN_FORGE_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        std::cerr << "invalid CARTAN_FORGE_SEED value '" << env << "'\n";
        return 2;
      }
      cfg.seed = v;
    }
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    RunReport rep = run_command(cfg);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    rep.payload.add("wall_time_ms", Json::number(ms));
    std::cout << rep.payload.dump() << "\n";
    return rep.exit_code();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SceneError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cartanforge
