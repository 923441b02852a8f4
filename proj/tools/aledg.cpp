// Command-line front end. Exit codes: 0 pass, 1 threshold failure, 2 error.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aledg/config.hpp"
#include "aledg/error.hpp"
#include "aledg/experiment.hpp"
#include "aledg/output.hpp"
#include "aledg/parallel.hpp"
#include "aledg/selftest.hpp"

namespace {

enum class Mode { Run, Convergence, Gcl, MaxPrinciple };

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Run: return "run";
    case Mode::Convergence: return "convergence";
    case Mode::Gcl: return "gcl";
    case Mode::MaxPrinciple: return "maxprinciple";
  }
  return "?";
}

void require_mode(Mode mode, aledg::Experiment e) {
  using aledg::Experiment;
  bool ok = true;
  switch (mode) {
    case Mode::Run: break;
    case Mode::Convergence:
      ok = e == Experiment::Advection || e == Experiment::Burgers ||
           e == Experiment::EulerPlane || e == Experiment::EulerVortex;
      break;
    case Mode::Gcl: ok = aledg::is_gcl_experiment(e); break;
    case Mode::MaxPrinciple: ok = e == Experiment::Advection || e == Experiment::Burgers; break;
  }
  if (!ok) {
    throw aledg::Error(std::string("experiment '") + aledg::experiment_name(e) +
                       "' cannot be used with the '" + mode_name(mode) + "' command");
  }
}

int run_mode(Mode mode, const std::string& path, std::vector<std::string> overrides,
             const std::string& output_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  if (mode == Mode::MaxPrinciple) {
    // The maximum principle holds with the limiter and the interval-wide
    // wave speed; user overrides still come last.
    overrides.insert(overrides.begin(), {"limiter.bound_preserving=true",
                                         "limiter.wave_speed=global"});
  }
  if (!output_dir.empty()) overrides.push_back("run.output_dir=" + output_dir);
  const aledg::RunConfig config = aledg::load_config(path, overrides);
  require_mode(mode, config.experiment);

  aledg::CaseHooks hooks;
  int snapshot = 0;
  if (config.write_vtk) {
    std::filesystem::create_directories(config.output_dir);
    hooks.on_final = [&](const aledg::CaseResult& r) {
      const std::string file =
          (std::filesystem::path(config.output_dir) /
           (aledg::experiment_name(config.experiment) + "_P" + std::to_string(r.row.k) +
            "_" + aledg::rk_name(r.row.integrator) + "_" + std::to_string(snapshot++) + ".vtk"))
              .string();
      aledg::write_field_vtk(file, r.disc, r.field, r.positions);
    };
  }
  hooks.on_step = nullptr;

  std::cerr << "aledg " << mode_name(mode) << ": " << aledg::experiment_name(config.experiment)
            << " (" << aledg::thread_count() << " threads)\n";
  const aledg::ErrorReport report = aledg::run_experiment(config, hooks);
  aledg::RunInfo info;
  info.command = mode_name(mode);
  info.config_source = path;
  info.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& file : aledg::write_outputs(config, report, info)) {
    std::cerr << "wrote " << file << '\n';
  }
  aledg::write_csv(std::cout, report);
  for (const auto& c : report.checks) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.value << " ("
              << c.requirement << ")\n";
  }
  if (!report.failure.empty()) {
    std::cerr << "error: " << report.failure << '\n';
    return 2;
  }
  return report.passed() ? 0 : 1;
}

int run_selftest(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : aledg::run_selftest(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " - " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALE discontinuous Galerkin solver on moving triangular meshes.\n"
               "Thread count: ALEDG_THREADS environment variable."};
  app.require_subcommand(1);
  app.set_version_flag("--version", aledg::version_string());

  struct Args {
    std::string config, output;
    std::vector<std::string> overrides;
  };
  std::vector<std::pair<Mode, Args>> modes = {{Mode::Run, {}},
                                              {Mode::Convergence, {}},
                                              {Mode::Gcl, {}},
                                              {Mode::MaxPrinciple, {}}};
  const char* help[] = {"run any configured experiment",
                        "convergence study (advection, burgers, euler_plane, euler_vortex)",
                        "constant-state preservation (constant_gcl, two_mesh_gcl)",
                        "maximum principle with the bound-preserving limiter"};
  std::vector<CLI::App*> subs;
  for (size_t i = 0; i < modes.size(); ++i) {
    auto* sub = app.add_subcommand(mode_name(modes[i].first), help[i]);
    Args& a = modes[i].second;
    sub->add_option("config", a.config, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", a.overrides, "override, e.g. --set time.cfl=0.5");
    sub->add_option("-o,--output", a.output, "output directory");
    subs.push_back(sub);
  }
  std::uint64_t seed = 7;
  auto* self = app.add_subcommand("selftest", "run the property suite");
  self->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (self->parsed()) return run_selftest(seed);
    for (size_t i = 0; i < modes.size(); ++i) {
      if (subs[i]->parsed()) {
        const Args& a = modes[i].second;
        return run_mode(modes[i].first, a.config, a.overrides, a.output);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
