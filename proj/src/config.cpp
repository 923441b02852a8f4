#include "aledg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "aledg/error.hpp"

namespace aledg {

namespace {

struct Entry {
  std::string section, key, value;
  std::string where;  // "file:line" or "--set"
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error("empty list item in '" + s + "'");
    out.push_back(item);
  }
  if (out.empty()) throw Error("empty list");
  return out;
}

double parse_plain(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error("'" + s + "' is not a number");
  }
  return v;
}

// Plain numbers and fractions such as 1/16.
double parse_number(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_plain(s);
  const double den = parse_plain(trim(s.substr(slash + 1)));
  if (den == 0.0) throw Error("'" + s + "' divides by zero");
  return parse_plain(trim(s.substr(0, slash))) / den;
}

double parse_positive(const std::string& s) {
  const double v = parse_number(s);
  if (!(v > 0)) throw Error("'" + s + "' must be positive");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("'" + s + "' is not an integer");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), ::tolower);
  if (l == "true" || l == "yes" || l == "on" || l == "1") return true;
  if (l == "false" || l == "no" || l == "off" || l == "0") return false;
  throw Error("'" + s + "' is not a boolean (true/false)");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
  return out;
}

std::string opt(const std::optional<double>& v) { return v ? fmt(*v) : "none"; }

std::optional<double> parse_opt(const std::string& s) {
  if (s == "none") return std::nullopt;
  return parse_number(s);
}

struct KeySpec {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"run", "experiment",
       [](RunConfig& c, const std::string& v) { c.experiment = parse_experiment(v); },
       [](const RunConfig& c) { return experiment_name(c.experiment); }},
      {"run", "output_dir",
       [](RunConfig& c, const std::string& v) {
         if (v.empty()) throw Error("output_dir must not be empty");
         c.output_dir = v;
       },
       [](const RunConfig& c) { return c.output_dir; }},
      {"run", "seed",
       [](RunConfig& c, const std::string& v) {
         std::uint64_t s = 0;
         const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
         if (ec != std::errc() || ptr != v.data() + v.size()) {
           throw Error("'" + v + "' is not a nonnegative integer");
         }
         c.seed = s;
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"run", "vtk",
       [](RunConfig& c, const std::string& v) { c.write_vtk = parse_bool(v); },
       [](const RunConfig& c) { return std::string(c.write_vtk ? "true" : "false"); }},

      {"discretization", "k",
       [](RunConfig& c, const std::string& v) {
         std::vector<int> ks;
         for (const auto& item : split_list(v)) {
           const int k = parse_int(item);
           if (k < 1 || k > 3) {
             throw Error("polynomial degree k = " + item + " is not supported (use 1, 2 or 3)");
           }
           ks.push_back(k);
         }
         c.degrees = ks;
       },
       [](const RunConfig& c) {
         return join(c.degrees, [](int k) { return std::to_string(k); });
       }},
      {"discretization", "h0",
       [](RunConfig& c, const std::string& v) {
         std::vector<double> hs;
         for (const auto& item : split_list(v)) hs.push_back(parse_positive(item));
         c.h0s = hs;
       },
       [](const RunConfig& c) { return join(c.h0s, fmt); }},
      {"discretization", "diagonal",
       [](RunConfig& c, const std::string& v) {
         if (v == "lr_ul") c.diagonal = Diagonal::LowerRightUpperLeft;
         else if (v == "ll_ur") c.diagonal = Diagonal::LowerLeftUpperRight;
         else throw Error("diagonal must be lr_ul or ll_ur, got '" + v + "'");
       },
       [](const RunConfig& c) {
         return std::string(c.diagonal == Diagonal::LowerRightUpperLeft ? "lr_ul" : "ll_ur");
       }},

      {"mesh", "motion",
       [](RunConfig& c, const std::string& v) {
         if (v == "static") c.motion = MotionKind::Static;
         else if (v == "sinusoidal") c.motion = MotionKind::Sinusoidal;
         else if (v == "two_mesh") c.motion = MotionKind::TwoMeshInterp;
         else throw Error("motion must be static, sinusoidal or two_mesh, got '" + v + "'");
       },
       [](const RunConfig& c) {
         switch (c.motion) {
           case MotionKind::Static: return std::string("static");
           case MotionKind::Sinusoidal: return std::string("sinusoidal");
           default: return std::string("two_mesh");
         }
       }},
      {"mesh", "period",
       [](RunConfig& c, const std::string& v) { c.period = parse_positive(v); },
       [](const RunConfig& c) { return fmt(c.period); }},
      {"mesh", "perturbation",
       [](RunConfig& c, const std::string& v) {
         const double p = parse_number(v);
         if (p < 0 || p >= 0.5) throw Error("perturbation must lie in [0, 0.5)");
         c.perturbation = p;
       },
       [](const RunConfig& c) { return fmt(c.perturbation); }},
      {"mesh", "target_h0",
       [](RunConfig& c, const std::string& v) { c.target_h0 = parse_positive(v); },
       [](const RunConfig& c) { return fmt(c.target_h0); }},

      {"time", "integrator",
       [](RunConfig& c, const std::string& v) {
         std::vector<RKId> ids;
         for (const auto& item : split_list(v)) ids.push_back(parse_rk_id(item));
         c.integrators = ids;
       },
       [](const RunConfig& c) { return join(c.integrators, rk_name); }},
      {"time", "t_final",
       [](RunConfig& c, const std::string& v) { c.t_final = parse_positive(v); },
       [](const RunConfig& c) { return fmt(c.t_final); }},
      {"time", "cfl",
       [](RunConfig& c, const std::string& v) {
         const double x = parse_positive(v);
         if (x > 1.0) throw Error("cfl safety factor must not exceed 1");
         c.cfl = x;
       },
       [](const RunConfig& c) { return fmt(c.cfl); }},
      {"time", "dt_max",
       [](RunConfig& c, const std::string& v) { c.dt_max = parse_positive(v); },
       [](const RunConfig& c) { return fmt(c.dt_max); }},
      {"time", "dt_mode",
       [](RunConfig& c, const std::string& v) {
         if (v == "cfl") c.dt_mode = DtMode::Cfl;
         else if (v == "mesh_velocity") c.dt_mode = DtMode::MeshVelocity;
         else throw Error("dt_mode must be cfl or mesh_velocity, got '" + v + "'");
       },
       [](const RunConfig& c) {
         return std::string(c.dt_mode == DtMode::Cfl ? "cfl" : "mesh_velocity");
       }},

      {"limiter", "bound_preserving",
       [](RunConfig& c, const std::string& v) { c.bp_limiter = parse_bool(v); },
       [](const RunConfig& c) { return std::string(c.bp_limiter ? "true" : "false"); }},
      {"limiter", "slope",
       [](RunConfig& c, const std::string& v) { c.slope_limiter = parse_bool(v); },
       [](const RunConfig& c) { return std::string(c.slope_limiter ? "true" : "false"); }},
      {"limiter", "tvb",
       [](RunConfig& c, const std::string& v) {
         const double x = parse_number(v);
         if (x < 0) throw Error("tvb must be nonnegative");
         c.tvb = x;
       },
       [](const RunConfig& c) { return fmt(c.tvb); }},
      {"limiter", "nu",
       [](RunConfig& c, const std::string& v) {
         const double x = parse_number(v);
         if (x < 1.0 || x > 2.0) throw Error("nu must lie in [1, 2]");
         c.slope_nu = x;
       },
       [](const RunConfig& c) { return fmt(c.slope_nu); }},
      {"limiter", "wave_speed",
       [](RunConfig& c, const std::string& v) {
         if (v == "local") c.wave_speed = WaveSpeedMode::Local;
         else if (v == "global") c.wave_speed = WaveSpeedMode::Global;
         else throw Error("wave_speed must be local or global, got '" + v + "'");
       },
       [](const RunConfig& c) {
         return std::string(c.wave_speed == WaveSpeedMode::Local ? "local" : "global");
       }},

      {"model", "equation",
       [](RunConfig& c, const std::string& v) {
         if (v != "advection" && v != "burgers") {
           throw Error("equation must be advection or burgers, got '" + v + "'");
         }
         c.constant_model = v;
       },
       [](const RunConfig& c) { return c.constant_model; }},
      {"model", "constant",
       [](RunConfig& c, const std::string& v) { c.constant = parse_positive(v); },
       [](const RunConfig& c) { return fmt(c.constant); }},
      {"model", "gamma",
       [](RunConfig& c, const std::string& v) {
         const double g = parse_number(v);
         if (!(g > 1.0)) throw Error("gamma must exceed 1");
         c.gamma = g;
       },
       [](const RunConfig& c) { return fmt(c.gamma); }},

      {"acceptance", "order_tolerance",
       [](RunConfig& c, const std::string& v) { c.thresholds.order_tolerance = parse_positive(v); },
       [](const RunConfig& c) { return fmt(c.thresholds.order_tolerance); }},
      {"acceptance", "deviation_max",
       [](RunConfig& c, const std::string& v) { c.thresholds.deviation_max = parse_opt(v); },
       [](const RunConfig& c) { return opt(c.thresholds.deviation_max); }},
      {"acceptance", "fe_linf_min",
       [](RunConfig& c, const std::string& v) { c.thresholds.fe_linf_min = parse_opt(v); },
       [](const RunConfig& c) { return opt(c.thresholds.fe_linf_min); }},
      {"acceptance", "fe_linf_max",
       [](RunConfig& c, const std::string& v) { c.thresholds.fe_linf_max = parse_opt(v); },
       [](const RunConfig& c) { return opt(c.thresholds.fe_linf_max); }},
      {"acceptance", "bound_margin_min",
       [](RunConfig& c, const std::string& v) { c.thresholds.bound_margin_min = parse_opt(v); },
       [](const RunConfig& c) { return opt(c.thresholds.bound_margin_min); }},
      {"acceptance", "linf_max",
       [](RunConfig& c, const std::string& v) { c.thresholds.linf_max = parse_opt(v); },
       [](const RunConfig& c) { return opt(c.thresholds.linf_max); }},
      {"acceptance", "mass_drift_max",
       [](RunConfig& c, const std::string& v) { c.thresholds.mass_drift_max = parse_opt(v); },
       [](const RunConfig& c) { return opt(c.thresholds.mass_drift_max); }},
  };
  return table;
}

const KeySpec* find_key(const std::string& section, const std::string& key) {
  for (const auto& spec : key_table()) {
    if (section == spec.section && key == spec.key) return &spec;
  }
  return nullptr;
}

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
  throw Error(where + ": " + what);
}

std::vector<Entry> read_entries(const std::string& text, const std::string& source) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string where = source + ":" + std::to_string(line);
    std::string s = raw;
    const auto hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail_at(where, "unterminated section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      bool known = false;
      for (const auto& spec : key_table()) known = known || section == spec.section;
      if (!known) fail_at(where, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail_at(where, "expected key = value, got '" + s + "'");
    if (section.empty()) fail_at(where, "key outside of any [section]");
    entries.push_back({section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), where});
  }
  return entries;
}

Entry parse_override(const std::string& text) {
  const auto eq = text.find('=');
  const auto dot = text.find('.');
  const std::string where = "--set " + text;
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    fail_at(where, "override must look like section.key=value");
  }
  return {trim(text.substr(0, dot)), trim(text.substr(dot + 1, eq - dot - 1)),
          trim(text.substr(eq + 1)), where};
}

const std::string kEulerFwdReason =
    "euler_fwd is only allowed for the constant_gcl and two_mesh_gcl "
    "demonstrations: a first-order Runge-Kutta method does not satisfy the "
    "discrete geometric conservation law in two dimensions (the staged "
    "Jacobians miss the quadratic-in-time cell area, so even a constant state "
    "drifts). Use tvdrk2, tvdrk3 or ssprk54";

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Advection: return "advection";
    case Experiment::Burgers: return "burgers";
    case Experiment::BurgersShock: return "burgers_shock";
    case Experiment::EulerPlane: return "euler_plane";
    case Experiment::EulerVortex: return "euler_vortex";
    case Experiment::ConstantGCL: return "constant_gcl";
    case Experiment::TwoMeshGCL: return "two_mesh_gcl";
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (Experiment e : {Experiment::Advection, Experiment::Burgers,
                       Experiment::BurgersShock, Experiment::EulerPlane,
                       Experiment::EulerVortex, Experiment::ConstantGCL,
                       Experiment::TwoMeshGCL}) {
    if (experiment_name(e) == name) return e;
  }
  throw Error("unknown experiment '" + name +
              "' (advection, burgers, burgers_shock, euler_plane, euler_vortex, "
              "constant_gcl, two_mesh_gcl)");
}

bool is_gcl_experiment(Experiment e) {
  return e == Experiment::ConstantGCL || e == Experiment::TwoMeshGCL;
}

RunConfig default_config(Experiment e) {
  RunConfig c;
  c.experiment = e;
  c.output_dir = "aledg_out/" + experiment_name(e);
  switch (e) {
    case Experiment::Advection:
      c.integrators = {RKId::TVDRK3};
      c.degrees = {1, 2, 3};
      c.h0s = {0.5, 0.25, 0.125};
      break;
    case Experiment::Burgers:
      c.t_final = 0.1;
      c.degrees = {1, 2};
      c.h0s = {0.5, 0.25, 0.125};
      break;
    case Experiment::BurgersShock:
      c.t_final = 0.45;
      c.h0s = {0.0625};
      c.slope_limiter = true;
      c.thresholds.linf_max = 1.6;
      c.thresholds.mass_drift_max = 1e-12;
      break;
    case Experiment::EulerPlane:
      c.degrees = {1, 2};
      c.h0s = {0.5, 0.25, 0.125};
      break;
    case Experiment::EulerVortex:
      c.t_final = default_sinusoid_period();
      c.degrees = {2};
      c.h0s = {1.0, 0.5};
      c.dt_max = 0.5;
      break;
    case Experiment::ConstantGCL:
      c.integrators = {RKId::TVDRK3};
      c.degrees = {1, 2, 3};
      c.h0s = {0.5, 0.25, 0.125};
      c.thresholds.deviation_max = 1e-12;
      break;
    case Experiment::TwoMeshGCL:
      c.integrators = {RKId::ForwardEuler, RKId::TVDRK2, RKId::TVDRK3};
      c.h0s = {0.5};
      c.motion = MotionKind::TwoMeshInterp;
      c.dt_mode = DtMode::MeshVelocity;
      // h0/max|w| exceeds T here; the cap keeps the step linearly stable.
      c.dt_max = 0.0625;
      c.thresholds.deviation_max = 1e-12;
      c.thresholds.fe_linf_min = 5e-3;
      c.thresholds.fe_linf_max = 5e-2;
      break;
  }
  return c;
}

RunConfig parse_config(const std::string& text, const std::string& source,
                       const std::vector<std::string>& overrides) {
  std::vector<Entry> entries = read_entries(text, source);
  for (const auto& o : overrides) entries.push_back(parse_override(o));

  std::map<std::string, std::string> first_seen;
  Experiment experiment = Experiment::Advection;
  for (const auto& e : entries) {
    if (!find_key(e.section, e.key)) {
      fail_at(e.where, "unknown key '" + e.key + "' in section [" + e.section + "]");
    }
    const std::string id = e.section + "." + e.key;
    const bool from_override = e.where.rfind("--set", 0) == 0;
    if (!from_override && first_seen.count(id)) {
      fail_at(e.where, "duplicate key '" + id + "' (first set at " + first_seen[id] + ")");
    }
    first_seen.emplace(id, e.where);
    if (id == "run.experiment") {
      try {
        experiment = parse_experiment(e.value);
      } catch (const Error& err) {
        fail_at(e.where, err.what());
      }
    }
  }

  RunConfig c = default_config(experiment);
  std::map<std::string, std::string> where;
  bool bounds_explicit = false;
  for (const auto& e : entries) {
    const std::string id = e.section + "." + e.key;
    try {
      find_key(e.section, e.key)->set(c, e.value);
    } catch (const Error& err) {
      fail_at(e.where, "invalid value for '" + id + "': " + err.what());
    }
    where[id] = e.where;
    bounds_explicit = bounds_explicit || id == "acceptance.bound_margin_min";
  }
  auto at = [&](const std::string& id) {
    return where.count(id) ? where[id] : source;
  };

  // Cross-key invariants.
  const bool gcl = is_gcl_experiment(c.experiment);
  if (!gcl) {
    for (RKId id : c.integrators) {
      if (id == RKId::ForwardEuler) fail_at(at("time.integrator"), kEulerFwdReason);
    }
  }
  const bool euler_model =
      c.experiment == Experiment::EulerPlane || c.experiment == Experiment::EulerVortex;
  if (c.bp_limiter && euler_model) {
    fail_at(at("limiter.bound_preserving"),
            "the bound-preserving limiter is defined for scalar equations only");
  }
  if (c.slope_limiter && c.experiment != Experiment::BurgersShock) {
    fail_at(at("limiter.slope"),
            "the slope limiter is reserved for burgers_shock; it would spoil "
            "convergence measurements");
  }
  if ((c.motion == MotionKind::TwoMeshInterp) != (c.experiment == Experiment::TwoMeshGCL)) {
    fail_at(at("mesh.motion"), "two_mesh motion goes with the two_mesh_gcl experiment only");
  }
  if (c.experiment == Experiment::TwoMeshGCL && c.constant_model != "advection") {
    fail_at(at("model.equation"), "two_mesh_gcl uses the advection equation");
  }
  if (c.motion == MotionKind::TwoMeshInterp) {
    for (double h : c.h0s) {
      const double r = c.target_h0 / h;
      if (r < 1.0 - 1e-12 || std::abs(r - std::round(r)) > 1e-9) {
        fail_at(at("discretization.h0"),
                "every h0 must refine mesh.target_h0 (target_h0 / h0 a whole number)");
      }
    }
  }
  if (c.experiment == Experiment::EulerVortex && c.t_final > 1e3) {
    fail_at(at("time.t_final"), "t_final is unreasonably large");
  }
  if (c.bp_limiter && !bounds_explicit) c.thresholds.bound_margin_min = -1e-12;

  for (const auto& spec : key_table()) {
    c.echo.emplace_back(std::string(spec.section) + "." + spec.key, spec.get(c));
  }
  return c;
}

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path, overrides);
}

}  // namespace aledg
