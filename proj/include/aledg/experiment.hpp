// Experiment drivers: build the mesh, motion and model for a configured
// case, run it, and collect error tables and pass/fail checks.
#ifndef ALEDG_EXPERIMENT_HPP_
#define ALEDG_EXPERIMENT_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aledg/config.hpp"
#include "aledg/field.hpp"

namespace aledg {

struct ResultRow {
  int k = 1;
  double h0 = 0.0;
  RKId integrator = RKId::SSPRK54;
  int cells = 0;
  double l2 = 0.0;           // error, or deviation for constant-state runs
  double linf = 0.0;
  std::optional<double> l2_pressure;  // Euler only
  std::optional<double> order, order_pressure;
  // Smallest min(M - u) and min(u - m) seen over all steps (scalar runs).
  std::optional<double> min_upper, min_lower;
  double mass_drift = 0.0;   // relative change of the total integral
  double max_abs = 0.0;      // max |u| at the end
  double norm_growth = 0.0;  // max over steps of ||u|| - ||u_0||
  int steps = 0;
  double wall_seconds = 0.0;
};

struct Check {
  std::string name;
  double value = 0.0;
  std::string requirement;
  bool passed = false;
};

struct ErrorReport {
  Experiment experiment = Experiment::Advection;
  std::vector<ResultRow> rows;
  std::vector<Check> checks;
  double wall_seconds = 0.0;
  std::string failure;  // solver error that aborted the sweep, if any

  bool passed() const;
};

/// Everything a caller may want to look at once a case has finished.
struct CaseResult {
  const Discretization& disc;
  const DGField& field;
  const std::vector<Vector2>& positions;
  const ResultRow& row;
};

struct CaseHooks {
  std::function<void(const CaseResult&)> on_final;
  StepObserver on_step;
};

/// Mesh box, boundary kind, model and exact solution for an experiment.
struct ProblemDefinition {
  Box box;
  BoundaryKind bc = BoundaryKind::Periodic;
  FluxModel model;
  ExactSolution exact;
};
ProblemDefinition problem_definition(const RunConfig& config);

/// Target mesh of the two-mesh motion. Interior vertices of a criss mesh of
/// spacing `target_h0` get a seeded uniform displacement of at most
/// `perturbation * target_h0` per coordinate; `mesh` (a refinement of that
/// mesh) receives the piecewise linear interpolant, so refining the pair
/// keeps the deformation fixed.
std::vector<Vector2> perturbed_vertices(const Mesh& mesh, double perturbation,
                                        double target_h0, Diagonal diagonal,
                                        std::uint64_t seed);

MeshMotion make_motion(const RunConfig& config, const Mesh& mesh);

/// One resolution of one degree with one integrator.
ResultRow run_case(const RunConfig& config, int k, double h0, RKId integrator,
                   const CaseHooks& hooks = {});

/// Whole sweep over k, integrator and h0; fills orders and checks. Solver
/// errors stop the sweep and are recorded in `failure`.
ErrorReport run_experiment(const RunConfig& config, const CaseHooks& hooks = {});

}  // namespace aledg

#endif  // ALEDG_EXPERIMENT_HPP_
