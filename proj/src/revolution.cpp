#include "cartanforge/revolution.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "cartanforge/expr.hpp"

namespace cartanforge {

namespace {

std::string literal(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double family_phi2(double R0, double r) {
  const double a = R0 - 1.5;
  return a - (a - r * r / 4.0) * std::exp(-r * r / 2.0);
}

// d(Phi^2)/dr
double family_phi2_prime(double R0, double r) {
  return r * std::exp(-r * r / 2.0) * (R0 - 1.0 - r * r / 4.0);
}

// d^2(Phi^2)/dr^2
double family_phi2_second(double R0, double r) {
  const double r2 = r * r;
  return std::exp(-r2 / 2.0) *
         ((1.0 - r2) * (R0 - 1.0 - r2 / 4.0) - r2 / 2.0);
}

}  // namespace

SurfaceOfRevolution SurfaceOfRevolution::family(double R0) {
  if (!(R0 > 1.0))
    throw PreconditionError("curvature family needs R0 > 1, got " +
                            literal(R0));
  SurfaceOfRevolution s;
  s.name_ = "family-R0-" + literal(R0);
  s.is_family_ = true;
  s.r0_param_ = R0;
  return s;
}

SurfaceOfRevolution SurfaceOfRevolution::from_profile(std::string name,
                                                      std::string h_expr,
                                                      std::string h_prime_expr) {
  SurfaceOfRevolution s;
  s.name_ = std::move(name);
  s.is_family_ = false;
  s.h_expr_ = std::move(h_expr);
  s.h_prime_expr_ = std::move(h_prime_expr);
  s.h_field_ = parse_field(s.h_expr_);
  s.h1_field_ = parse_field(s.h_prime_expr_);
  s.h2_field_ = partial(partial(s.h_field_, 1), 1);

  // The hand-written derivative string must match exact differentiation.
  ScalarField exact = partial(s.h_field_, 1);
  for (double r : {0.4, 1.1, 2.3}) {
    const Point p{r, 0.0, 0.0};
    if (std::abs(exact.value(p) - s.h1_field_.value(p)) > 1e-12)
      throw std::logic_error("profile derivative string disagrees with "
                             "differentiation of the profile");
  }
  return s;
}

double SurfaceOfRevolution::R0() const {
  if (!is_family_)
    throw std::logic_error("R0 is only defined for the curvature family");
  return r0_param_;
}

void SurfaceOfRevolution::check_valid(double r) const {
  if (!(r > 0.0))
    throw EvalError("r = " + literal(r) + " is outside the chart (r > 0)");
  if (is_family_ && !(family_phi2(r0_param_, r) > 0.0))
    throw EvalError("r = " + literal(r) +
                    " is outside the valid interval of the surface " + name_);
}

double SurfaceOfRevolution::profile_sq(double r) const {
  if (!is_family_)
    throw std::logic_error("profile_sq is only defined for the curvature family");
  return family_phi2(r0_param_, r);
}

double SurfaceOfRevolution::eta(double r) const {
  if (!is_family_) return 1.0;
  check_valid(r);
  return r * std::exp(-r * r / 4.0) / (2.0 * std::sqrt(family_phi2(r0_param_, r)));
}

double SurfaceOfRevolution::eta_prime(double r) const {
  if (!is_family_) return 0.0;
  check_valid(r);
  const double p2 = family_phi2(r0_param_, r);
  const double Phi = std::sqrt(p2);
  const double u = r * std::exp(-r * r / 4.0);
  const double up = std::exp(-r * r / 4.0) * (1.0 - r * r / 2.0);
  return (up - u * family_phi2_prime(r0_param_, r) / (2.0 * p2)) / (2.0 * Phi);
}

double SurfaceOfRevolution::phi(double r) const {
  if (!is_family_) return h_field_.value({r, 0.0, 0.0});
  check_valid(r);
  return std::sqrt(family_phi2(r0_param_, r)) / (r0_param_ - 1.0);
}

double SurfaceOfRevolution::phi_prime(double r) const {
  if (!is_family_) return h1_field_.value({r, 0.0, 0.0});
  check_valid(r);
  const double Phi = std::sqrt(family_phi2(r0_param_, r));
  return family_phi2_prime(r0_param_, r) / (2.0 * Phi * (r0_param_ - 1.0));
}

double SurfaceOfRevolution::phi_second(double r) const {
  if (!is_family_) return h2_field_.value({r, 0.0, 0.0});
  check_valid(r);
  const double p2 = family_phi2(r0_param_, r);
  const double Phi = std::sqrt(p2);
  const double ps = family_phi2_prime(r0_param_, r);
  return (family_phi2_second(r0_param_, r) - ps * ps / (2.0 * p2)) /
         (2.0 * Phi * (r0_param_ - 1.0));
}

double SurfaceOfRevolution::gauss_curvature(double r) const {
  if (is_family_) {
    if (r != 0.0) check_valid(std::abs(r));  // r = 0 by even extension
    return r0_param_ - r * r / 4.0;
  }
  const double h = phi(r);
  if (h == 0.0) throw EvalError("profile vanishes at r = " + literal(r));
  return -phi_second(r) / h;
}

std::array<double, 2> SurfaceOfRevolution::christoffels(double r) const {
  const double e = eta(r);
  const double ph = phi(r);
  const double php = phi_prime(r);
  if (ph == 0.0) throw EvalError("profile vanishes at r = " + literal(r));
  return {-ph * php / (e * e), php / ph};
}

double SurfaceOfRevolution::r_limit() const {
  if (is_family_ && r0_param_ < 1.5) return domain_extent(r0_param_);
  return std::numeric_limits<double>::infinity();
}

double domain_extent(double R0) {
  if (!(R0 > 1.0))
    throw PreconditionError("curvature family needs R0 > 1, got " +
                            literal(R0));
  if (R0 >= 1.5)
    throw PreconditionError("domain extent is infinite for R0 >= 3/2");
  // Phi^2 rises like r^2 (R0-1)/2 near the origin and tends to R0 - 3/2 < 0,
  // so a sign change exists; march past the origin root, then bisect.
  double a = 1e-3;
  if (!(family_phi2(R0, a) > 0.0))
    throw std::logic_error("expected a positive profile just past the origin");
  double b = a;
  while (family_phi2(R0, b) > 0.0) {
    a = b;
    b += 0.05;
    if (b > 100.0)
      throw std::logic_error("no sign change found while bracketing the extent");
  }
  while (b - a > 1e-13) {
    const double mid = 0.5 * (a + b);
    if (family_phi2(R0, mid) > 0.0)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

double extent_profile_f(double R) {
  return (R - 1.5) * std::exp(2.0 * (R - 1.0));
}

ScanMinimum scan_profile_minimum(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("scan needs lo < hi");
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = extent_profile_f(c);
  double fd = extent_profile_f(d);
  while (b - a > 1e-11) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = extent_profile_f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = extent_profile_f(d);
    }
  }
  const double m = 0.5 * (a + b);
  return {m, extent_profile_f(m)};
}

std::array<std::array<std::string, 3>, 3>
SurfaceOfRevolution::bundle_component_strings() const {
  if (is_family_) {
    const std::string r0 = literal(r0_param_);
    const std::string prefix = "let phi2 = (" + r0 + " - 1.5) - (" + r0 +
                               " - 1.5 - c1^2/4)*exp(-c1^2/2); ";
    const std::string eta_s = "(c1*exp(-c1^2/4)/(2*sqrt(phi2)))";
    const std::string phi_s = "(sqrt(phi2)/(" + r0 + " - 1))";
    const std::string w_s = "exp(-c1^2/4)*(" + r0 + " - 1 - c1^2/4)/(" + r0 +
                            " - 1)";
    return {{{prefix + "-sin(c3)*" + eta_s, prefix + phi_s + "*cos(c3)", "0"},
             {prefix + "cos(c3)*" + eta_s, prefix + phi_s + "*sin(c3)", "0"},
             {"0", w_s, "1"}}};
  }
  const std::string h = "(" + h_expr_ + ")";
  return {{{"-sin(c3)", h + "*cos(c3)", "0"},
           {"cos(c3)", h + "*sin(c3)", "0"},
           {"0", h_prime_expr_, "1"}}};
}

Box SurfaceOfRevolution::default_bundle_box() const {
  const double two_pi = 2.0 * std::numbers::pi;
  if (is_family_ && r0_param_ < 1.5) {
    const double T = domain_extent(r0_param_);
    return {{0.12 * T, 0.0, 0.0}, {0.92 * T, two_pi, two_pi}};
  }
  const double r_hi = is_family_ ? 3.0 : 2.8;
  return {{0.3, 0.0, 0.0}, {r_hi, two_pi, two_pi}};
}

Coframe frame_bundle_coframe(const SurfaceOfRevolution& s, const Box& box) {
  auto comps = s.bundle_component_strings();
  auto row = [&](int i) {
    return KForm::one_form(parse_field(comps[static_cast<size_t>(i)][0]),
                           parse_field(comps[static_cast<size_t>(i)][1]),
                           parse_field(comps[static_cast<size_t>(i)][2]));
  };
  return Coframe(row(0), row(1), row(2), box);
}

Coframe frame_bundle_coframe(const SurfaceOfRevolution& s) {
  return frame_bundle_coframe(s, s.default_bundle_box());
}

GeodesicState launch_state(const SurfaceOfRevolution& s, double r0,
                           double theta0, double chi) {
  return {r0, theta0, std::cos(chi) / s.eta(r0), std::sin(chi) / s.phi(r0)};
}

std::array<double, 2> conserved_quantities(const SurfaceOfRevolution& s,
                                           const GeodesicState& st) {
  const double e = s.eta(st.r);
  const double ph = s.phi(st.r);
  return {ph * ph * st.thetadot,
          e * e * st.rdot * st.rdot + ph * ph * st.thetadot * st.thetadot};
}

namespace {

struct BetaForcing {
  const ScalarField* beta_r;
  const ScalarField* beta_theta;
};

using State4 = std::array<double, 4>;

State4 geodesic_rhs(const SurfaceOfRevolution& s, const State4& y,
                    const BetaForcing* beta) {
  const double r = y[0];
  const double rdot = y[2];
  const double thetadot = y[3];
  const double e = s.eta(r);
  const double ep = s.eta_prime(r);
  const double ph = s.phi(r);
  const double php = s.phi_prime(r);
  double rddot = -(ep / e) * rdot * rdot + (ph * php / (e * e)) * thetadot * thetadot;
  double thetaddot = -2.0 * (php / ph) * rdot * thetadot;
  if (beta) {
    // Prescribed geodesic curvature k_g = beta(velocity), applied as the
    // quarter-turned velocity so the forcing never feeds the energy.
    const Point p{y[0], y[1], 0.0};
    const double kg = beta->beta_r->value(p) * rdot +
                      beta->beta_theta->value(p) * thetadot;
    rddot += kg * (-(ph * thetadot) / e);
    thetaddot += kg * ((e * rdot) / ph);
  }
  return {rdot, thetadot, rddot, thetaddot};
}

Trajectory integrate_core(const SurfaceOfRevolution& s,
                          const GeodesicState& init, double t_end, double step,
                          int stride, const BetaForcing* beta) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");

  const long long steps = std::llround(t_end / step);
  State4 y{init.r, init.theta, init.rdot, init.thetadot};

  Trajectory traj;
  auto record = [&](long long k) {
    GeodesicState st{y[0], y[1], y[2], y[3]};
    auto [F, E] = conserved_quantities(s, st);
    traj.t.push_back(static_cast<double>(k) * step);
    traj.state.push_back(st);
    traj.F.push_back(F);
    traj.E.push_back(E);
  };

  record(0);
  for (long long k = 0; k < steps; ++k) {
    auto axpy = [&](const State4& base, double a, const State4& d) {
      return State4{base[0] + a * d[0], base[1] + a * d[1], base[2] + a * d[2],
                    base[3] + a * d[3]};
    };
    try {
      const State4 k1 = geodesic_rhs(s, y, beta);
      const State4 k2 = geodesic_rhs(s, axpy(y, step / 2.0, k1), beta);
      const State4 k3 = geodesic_rhs(s, axpy(y, step / 2.0, k2), beta);
      const State4 k4 = geodesic_rhs(s, axpy(y, step, k3), beta);
      for (int i = 0; i < 4; ++i)
        y[static_cast<size_t>(i)] +=
            step / 6.0 *
            (k1[static_cast<size_t>(i)] + 2.0 * k2[static_cast<size_t>(i)] +
             2.0 * k3[static_cast<size_t>(i)] + k4[static_cast<size_t>(i)]);
    } catch (const EvalError& e) {
      throw EvalError(std::string(e.what()) + " (while integrating, t = " +
                      literal(static_cast<double>(k) * step) + ")");
    }
    for (double v : y)
      if (!std::isfinite(v))
        throw EvalError("nonfinite state at t = " +
                        literal(static_cast<double>(k + 1) * step));
    if ((k + 1) % stride == 0 || k + 1 == steps) record(k + 1);
  }
  return traj;
}

}  // namespace

Trajectory integrate_geodesic(const SurfaceOfRevolution& s,
                              const GeodesicState& init, double t_end,
                              double step, int stride) {
  return integrate_core(s, init, t_end, step, stride, nullptr);
}

Trajectory integrate_beta_geodesic(const SurfaceOfRevolution& s,
                                   const ScalarField& beta_r,
                                   const ScalarField& beta_theta,
                                   const GeodesicState& init, double t_end,
                                   double step, int stride) {
  BetaForcing beta{&beta_r, &beta_theta};
  return integrate_core(s, init, t_end, step, stride, &beta);
}

PrimeIntegralReport prime_integral_check(const SurfaceOfRevolution& s,
                                         const Trajectory& traj, int stride) {
  if (traj.state.empty())
    throw std::invalid_argument("empty trajectory");
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");

  Coframe cf = frame_bundle_coframe(s);
  ScalarField R =
      expand_two_form(exterior_derivative(cf.form(3)), cf).c12;
  ScalarField R_1 = coframe_derivatives(R, cf).d1;

  double max_absF = 0.0;
  for (size_t i = 0; i < traj.state.size(); i += static_cast<size_t>(stride))
    max_absF = std::max(max_absF, std::abs(traj.F[i]));

  PrimeIntegralReport rep;
  rep.meridian = max_absF < 1e-10;
  bool first = true;
  for (size_t i = 0; i < traj.state.size(); i += static_cast<size_t>(stride)) {
    const GeodesicState& st = traj.state[i];
    // Documented orientation: lift to the fiber point whose second frame
    // vector is the negative of the velocity.
    const double psi =
        std::atan2(-s.phi(st.r) * st.thetadot, -s.eta(st.r) * st.rdot);
    const Point p{st.r, st.theta, psi};
    const double val = R_1.value(p) * std::exp(R.value(p));
    if (rep.meridian) {
      rep.sup_R1eR = std::max(rep.sup_R1eR, std::abs(val));
      continue;
    }
    const double rho = val / traj.F[i];
    rep.rho.push_back(rho);
    rep.rho_min = first ? rho : std::min(rep.rho_min, rho);
    rep.rho_max = first ? rho : std::max(rep.rho_max, rho);
    rep.rho_mean += rho;
    first = false;
  }
  if (!rep.rho.empty())
    rep.rho_mean /= static_cast<double>(rep.rho.size());
  return rep;
}

}  // namespace cartanforge
