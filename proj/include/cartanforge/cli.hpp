#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cartanforge/jsonout.hpp"
#include "cartanforge/revolution.hpp"

namespace cartanforge {

/// Everything a single command run depends on. Populated from flags by
/// run_cli; run_command is the testable core.
struct CommandConfig {
  std::string subcommand;

  std::string coframe_uri;   // builtin:... or a scene file path
  std::string matrix_path;   // JSON file with entries a11..a33
  std::string kind = "cartan";         // verify: cartan | finsler
  std::string transform_case;          // transform: see run_command
  std::string scene_name;              // scene: sphere | flat | r0=<value>
  std::string profile;                 // geodesic: family | sphere | flat
  std::string m_expr, f_expr;          // scalings for transform cases
  std::string beta_r_expr = "0", beta_theta_expr = "0";

  double R0 = 1.5;
  double C = 1.0;
  double tol = 1e-8;
  int sign = 1;
  int samples = 6;       // grid points per axis
  int random_points = 0; // when > 0, sample randomly instead of on the grid
  std::uint64_t seed = 0;

  double r0 = 1.0, theta0 = 0.0, psi0 = 0.7;
  double t_end = 10.0, step = 1e-3;
  int stride = 1;

  double lo = 0.0, hi = 2.0;  // scan-f range

  std::string out_path;        // empty = stdout
  std::string format = "json"; // geodesic artifacts: json | csv
};

struct RunReport {
  Json payload;
  bool pass = true;

  int exit_code() const { return pass ? 0 : 1; }
};

/// Executes one command and builds its report. Throws ParseError/SceneError
/// for malformed inputs, PreconditionError/EvalError for violated
/// hypotheses, std::invalid_argument for out-of-range parameters.
RunReport run_command(const CommandConfig& cfg);

/// Trajectory table with columns t, r, theta, rdot, thetadot, F, E at 17
/// significant digits.
void export_csv(const Trajectory& traj, std::ostream& out);
void export_csv(const Trajectory& traj, const std::string& path);

/// Flag parsing plus exit-code mapping: 0 pass, 1 failed checks, 2 malformed
/// input (expressions, scenes, flags), 3 violated preconditions or evaluation
/// outside a domain.
int run_cli(int argc, char** argv);

}  // namespace cartanforge
