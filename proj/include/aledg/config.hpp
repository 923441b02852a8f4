// Run configuration: a sectioned key = value text format with line-precise
// diagnostics, per-experiment defaults and command-line overrides.
#ifndef ALEDG_CONFIG_HPP_
#define ALEDG_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aledg/mesh.hpp"
#include "aledg/rk.hpp"
#include "aledg/solver.hpp"

namespace aledg {

enum class Experiment {
  Advection,
  Burgers,
  BurgersShock,
  EulerPlane,
  EulerVortex,
  ConstantGCL,
  TwoMeshGCL
};

std::string experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name);

enum class DtMode { Cfl, MeshVelocity };

/// Pass/fail thresholds checked after a run. Unset entries are not checked.
struct Thresholds {
  double order_tolerance = 0.5;        // final order vs k+1
  std::optional<double> deviation_max;  // constant-state runs, order >= 2
  std::optional<double> fe_linf_min, fe_linf_max;  // forward Euler demo
  std::optional<double> bound_margin_min;
  std::optional<double> linf_max;
  std::optional<double> mass_drift_max;
};

struct RunConfig {
  Experiment experiment = Experiment::Advection;
  std::vector<int> degrees{1};
  std::vector<double> h0s{0.5};
  Diagonal diagonal = Diagonal::LowerRightUpperLeft;
  MotionKind motion = MotionKind::Sinusoidal;
  double period = default_sinusoid_period();
  double perturbation = 0.4;  // two-mesh target, fraction of target_h0
  double target_h0 = 0.5;     // spacing the target perturbation is drawn on
  std::uint64_t seed = 20190601;
  std::vector<RKId> integrators{RKId::SSPRK54};
  double t_final = 1.0;
  double cfl = 0.9;
  double dt_max = 0.1;
  DtMode dt_mode = DtMode::Cfl;
  bool bp_limiter = false;
  bool slope_limiter = false;
  double tvb = 0.0;
  double slope_nu = 1.5;
  WaveSpeedMode wave_speed = WaveSpeedMode::Local;
  std::string constant_model = "advection";  // constant_gcl / two_mesh_gcl
  double constant = 1.0;
  double gamma = 1.4;
  std::string output_dir = "aledg_out";
  bool write_vtk = false;
  Thresholds thresholds;
  // Every key with its effective value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Parses `text` (named `source` in messages) and applies `overrides` of the
/// form section.key=value on top. Throws Error with "source:line: ..." text.
RunConfig parse_config(const std::string& text, const std::string& source,
                       const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});

/// Defaults for an experiment, as if the config named only the experiment.
RunConfig default_config(Experiment e);

/// True for runs whose purpose is a constant-state / GCL check.
bool is_gcl_experiment(Experiment e);

}  // namespace aledg

#endif  // ALEDG_CONFIG_HPP_
