// Semi-discrete residual, GCL-coupled Runge-Kutta stepping, step-size
// control and initial projection.
#ifndef ALEDG_SOLVER_HPP_
#define ALEDG_SOLVER_HPP_

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "aledg/field.hpp"
#include "aledg/limiters.hpp"
#include "aledg/rk.hpp"

namespace aledg {

/// Local: lambda from the two trace states at every edge point. Global: for
/// scalar models, lambda from the whole invariant range [m, M].
enum class WaveSpeedMode { Local, Global };

struct ProblemSetup {
  WaveSpeedMode wave_speed = WaveSpeedMode::Local;
  std::optional<Bounds> bounds;                 // used by Global
  std::optional<ExactSolution> boundary_data;   // Dirichlet faces
};

struct TimeControl {
  RKId integrator = RKId::TVDRK3;
  double cfl = 0.9;
  double dt_max = 0.1;
  // Step size h0 / max |w| instead of the CFL bound.
  bool dt_override = false;
};

struct SolverConfig {
  ProblemSetup problem;
  LimiterConfig limiter;
  TimeControl time;
};

/// L2 projection of `exact` at time t with the degree 2k+2 rule.
DGField project_initial(const Discretization& d,
                        const std::vector<CellGeometry>& geo,
                        const ExactSolution& exact, double t = 0.0);

/// d/dt (J c) for every cell and basis function, evaluated with the
/// geometry `geo` at time t.
Eigen::MatrixXd spatial_residual(const Discretization& d,
                                 const Eigen::MatrixXd& coeffs,
                                 const std::vector<CellGeometry>& geo, double t,
                                 const ProblemSetup& setup);

/// Staged Jacobians J^{n,i}, i = 0..s, as rows; columns are cells.
/// `stage_geo[j]` is the geometry at t_n + gamma_j dt.
Eigen::MatrixXd gcl_stage_jacobians(
    const std::vector<std::vector<CellGeometry>>& stage_geo,
    const RKScheme& scheme, double dt);
Eigen::MatrixXd gcl_stage_jacobians(const MeshTopology& topo,
                                    const StepMotion& step,
                                    const RKScheme& scheme);

struct StepReport {
  Eigen::MatrixXd staged_jacobians;
  std::vector<CellGeometry> end_geometry;
};

/// Advances `u` from u.t to u.t + dt.
StepReport rk_step(const Discretization& d, DGField& u, const MeshMotion& motion,
                   const RKScheme& scheme, double dt, const SolverConfig& config);

/// Largest admissible step from u.t, not exceeding t_final - u.t.
double compute_dt(const Discretization& d, const DGField& u,
                  const MeshMotion& motion, const SolverConfig& config,
                  double t_final);

struct EvolveResult {
  int steps = 0;
  double min_dt = 0.0;
  double max_dt = 0.0;
};

using StepObserver =
    std::function<void(const DGField&, const StepReport&, int step, double dt)>;

EvolveResult evolve(const Discretization& d, DGField& u, const MeshMotion& motion,
                    const SolverConfig& config, double t_final,
                    const StepObserver& observer = {});

}  // namespace aledg

#endif  // ALEDG_SOLVER_HPP_
