#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cartanforge/coframe.hpp"
#include "cartanforge/report.hpp"

namespace cartanforge {

/// Rotationally symmetric metric eta(r)^2 dr^2 + phi(r)^2 dtheta^2.
///
/// The one-parameter family indexed by R0 > 1 has
///   Phi(r)^2 = (R0 - 3/2) - (R0 - 3/2 - r^2/4) e^{-r^2/2},
///   eta = r e^{-r^2/4} / (2 Phi),   phi = Phi / (R0 - 1),
/// valid where Phi^2 > 0; its Gauss curvature is R0 - r^2/4. At R0 = 3/2 the
/// closed forms collapse to eta = 1 and phi = r e^{-r^2/4}. Test profiles
/// with eta = 1 and a hand-picked phi = h(r) are also supported.
class SurfaceOfRevolution {
 public:
  static SurfaceOfRevolution family(double R0);
  /// eta = 1 and phi = h parsed from expression strings in r (= c1); the
  /// derivative string is cross-checked against exact differentiation of h.
  static SurfaceOfRevolution from_profile(std::string name, std::string h_expr,
                                          std::string h_prime_expr);

  const std::string& name() const { return name_; }
  bool is_family() const { return is_family_; }
  double R0() const;

  double eta(double r) const;
  double eta_prime(double r) const;
  double phi(double r) const;
  double phi_prime(double r) const;
  double phi_second(double r) const;
  /// Phi^2 for the family; positive exactly on the valid r-interval.
  double profile_sq(double r) const;

  /// R0 - r^2/4 for the family (even extension covers r = 0); -h''/h for
  /// profiles.
  double gauss_curvature(double r) const;

  /// (gamma^1_22, gamma^2_12) = (-phi phi' / eta^2, phi' / phi).
  std::array<double, 2> christoffels(double r) const;

  /// Upper end of the valid r-interval: infinite for R0 >= 3/2 and for
  /// profiles, the first positive zero of Phi^2 otherwise.
  double r_limit() const;

  /// Expression strings for the lifted orthonormal coframe components
  /// (rows a1, a2, a3 against dc1, dc2, dc3) in the (r, theta, psi) chart.
  std::array<std::array<std::string, 3>, 3> bundle_component_strings() const;
  Box default_bundle_box() const;

 private:
  SurfaceOfRevolution() = default;
  void check_valid(double r) const;

  std::string name_;
  bool is_family_ = false;
  double r0_param_ = 0.0;
  std::string h_expr_, h_prime_expr_;
  ScalarField h_field_, h1_field_, h2_field_;
};

/// First positive root of Phi^2 for 1 < R0 < 3/2, located by bisection to
/// 1e-12; the extent is infinite for R0 >= 3/2 and the family needs R0 > 1
/// (both raise PreconditionError).
double domain_extent(double R0);

/// f(R) = (R - 3/2) e^{2(R-1)}, the conserved-quantity profile of the
/// curvature family, and its minimum over [lo, hi] located by golden-section
/// search.
double extent_profile_f(double R);
struct ScanMinimum {
  double argmin;
  double value;
};
ScanMinimum scan_profile_minimum(double lo, double hi);

/// Orthonormal frame-bundle lift of the surface chart:
///   a1 = -sin(psi) eta dr + phi cos(psi) dtheta,
///   a2 =  cos(psi) eta dr + phi sin(psi) dtheta,
///   a3 = dpsi + (phi'/eta) dtheta.
Coframe frame_bundle_coframe(const SurfaceOfRevolution& s);
Coframe frame_bundle_coframe(const SurfaceOfRevolution& s, const Box& box);

struct GeodesicState {
  double r = 1.0;
  double theta = 0.0;
  double rdot = 0.0;
  double thetadot = 0.0;
};

/// Unit-speed launch at angle chi against the increasing-r direction:
/// rdot = cos(chi)/eta, thetadot = sin(chi)/phi.
GeodesicState launch_state(const SurfaceOfRevolution& s, double r0,
                           double theta0, double chi);

struct Trajectory {
  std::vector<double> t;
  std::vector<GeodesicState> state;
  std::vector<double> F;  // Clairaut integral phi^2 thetadot
  std::vector<double> E;  // energy eta^2 rdot^2 + phi^2 thetadot^2
};

/// Clairaut integral and energy of a single state.
std::array<double, 2> conserved_quantities(const SurfaceOfRevolution& s,
                                           const GeodesicState& st);

/// Fixed-step RK4 on r'' = -(eta'/eta) r'^2 - gamma^1_22 theta'^2,
/// theta'' = -2 gamma^2_12 r' theta'. Records every `stride`-th step.
/// Leaving the valid r-interval or producing a nonfinite state raises
/// EvalError.
Trajectory integrate_geodesic(const SurfaceOfRevolution& s,
                              const GeodesicState& init, double t_end,
                              double step, int stride = 1);

/// Same integrator with the prescribed-curvature forcing k_g J(velocity)
/// added to the acceleration, where k_g = beta_r(r, theta) rdot +
/// beta_theta(r, theta) thetadot and J rotates the velocity a quarter turn
/// in the oriented orthonormal frame. A zero beta adds zero forcing and
/// reduces to integrate_geodesic.
Trajectory integrate_beta_geodesic(const SurfaceOfRevolution& s,
                                   const ScalarField& beta_r,
                                   const ScalarField& beta_theta,
                                   const GeodesicState& init, double t_end,
                                   double step, int stride = 1);

/// Evaluates rho = R_1 e^R / F at fiber lifts of trajectory states, with the
/// documented orientation psi = atan2(-phi thetadot, -eta rdot) (the lift
/// whose second frame vector is the *negative* of the velocity). R and its
/// coframe derivative R_1 come from the verified frame-bundle pipeline, not
/// from closed forms. Meridians (F = 0) instead check R_1 e^R itself.
struct PrimeIntegralReport {
  bool meridian = false;
  std::vector<double> rho;   // per sampled state, empty for meridians
  double rho_min = 0.0;
  double rho_max = 0.0;
  double rho_mean = 0.0;
  double sup_R1eR = 0.0;     // meridian case: sup |R_1 e^R| along the flow
  double spread() const { return rho_max - rho_min; }
};

PrimeIntegralReport prime_integral_check(const SurfaceOfRevolution& s,
                                         const Trajectory& traj,
                                         int stride = 1);

}  // namespace cartanforge
