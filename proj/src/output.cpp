#include "aledg/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aledg/error.hpp"
#include "aledg/limiters.hpp"
#include "aledg/parallel.hpp"

#ifndef ALEDG_VERSION
#define ALEDG_VERSION "dev"
#endif

namespace aledg {

namespace {

using nlohmann::ordered_json;

std::string sci(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6E", v);
  return buf;
}

std::string fixed2(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::string opt_sci(const std::optional<double>& v) { return v ? sci(*v) : ""; }

// 1/16 rather than 0.0625 when h0 is a unit fraction.
std::string h0_text(double h) {
  const double inv = 1.0 / h;
  if (std::abs(inv - std::round(inv)) < 1e-9 && inv >= 1.0) {
    const long n = std::lround(inv);
    return n == 1 ? "1" : "1/" + std::to_string(n);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", h);
  return buf;
}

std::vector<std::string> csv_row(Experiment e, const ResultRow& r) {
  const std::string k = std::to_string(r.k), rk = rk_name(r.integrator),
                    h = h0_text(r.h0), n = std::to_string(r.cells),
                    steps = std::to_string(r.steps);
  switch (e) {
    case Experiment::Advection:
    case Experiment::Burgers:
      return {k, rk, h, n, sci(r.l2), fixed2(r.order), sci(r.linf),
              opt_sci(r.min_upper), opt_sci(r.min_lower), steps};
    case Experiment::EulerPlane:
    case Experiment::EulerVortex:
      return {k, rk, h, n, sci(r.l2), fixed2(r.order), opt_sci(r.l2_pressure),
              fixed2(r.order_pressure), steps};
    case Experiment::BurgersShock:
      return {k, rk, h, n, sci(r.max_abs), opt_sci(r.min_upper), opt_sci(r.min_lower),
              sci(r.mass_drift), steps};
    case Experiment::ConstantGCL:
      return {k, rk, h, n, sci(r.l2), sci(r.linf), steps};
    case Experiment::TwoMeshGCL:
      return {rk, n, k, sci(r.linf), sci(r.l2), steps};
  }
  return {};
}

void write_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(fields[i]);
  }
  os << "\r\n";
}

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }
ordered_json num(const std::optional<double>& v) {
  return v ? num(*v) : ordered_json();
}

ordered_json row_json(const ResultRow& r) {
  ordered_json j;
  j["k"] = r.k;
  j["h0"] = r.h0;
  j["integrator"] = rk_name(r.integrator);
  j["cells"] = r.cells;
  j["l2"] = num(r.l2);
  j["linf"] = num(r.linf);
  j["order"] = num(r.order);
  j["l2_pressure"] = num(r.l2_pressure);
  j["order_pressure"] = num(r.order_pressure);
  j["min_upper_margin"] = num(r.min_upper);
  j["min_lower_margin"] = num(r.min_lower);
  j["mass_drift"] = num(r.mass_drift);
  j["max_abs"] = num(r.max_abs);
  j["steps"] = r.steps;
  return j;
}

const char* kVarNames[4] = {"rho", "rho_u", "rho_v", "E"};

void expect(std::istream& is, const std::string& word) {
  std::string got;
  if (!(is >> got) || got != word) {
    throw Error("read_vtk: expected '" + word + "', got '" + got + "'");
  }
}

template <typename T>
T read_value(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) throw Error(std::string("read_vtk: could not read ") + what);
  return v;
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> csv_header(Experiment e) {
  switch (e) {
    case Experiment::Advection:
    case Experiment::Burgers:
      return {"k", "integrator", "h0", "cells", "L2 norm", "order", "L_inf norm",
              "min(1.5-u_h)", "min(u_h-0.5)", "steps"};
    case Experiment::EulerPlane:
    case Experiment::EulerVortex:
      return {"k", "integrator", "h0", "cells", "rho L2 norm", "rho order",
              "p L2 norm", "p order", "steps"};
    case Experiment::BurgersShock:
      return {"k", "integrator", "h0", "cells", "max |u_h|", "min(1.5-u_h)",
              "min(u_h-0.5)", "relative mass drift", "steps"};
    case Experiment::ConstantGCL:
      return {"k", "integrator", "h0", "cells", "L2 norm", "L_inf norm", "steps"};
    case Experiment::TwoMeshGCL:
      return {"integrator", "N", "k", "L_inf norm", "L2 norm", "steps"};
  }
  return {};
}

void write_csv(std::ostream& os, const ErrorReport& report) {
  write_line(os, csv_header(report.experiment));
  for (const ResultRow& r : report.rows) write_line(os, csv_row(report.experiment, r));
}

void write_csv(const std::string& path, const ErrorReport& report) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  write_csv(os, report);
  if (!os) throw Error("write failed for " + path);
}

std::vector<VtkField> field_vtk_data(const Discretization& d, const DGField& u) {
  const int nv = d.n_vars(), nc = d.n_cells();
  Eigen::MatrixXd vertex_phi(3, d.n_basis());
  for (int i = 0; i < 3; ++i) {
    vertex_phi.row(i) = d.basis().values(reference::vertices()[i]).transpose();
  }
  std::vector<VtkField> fields;
  for (int v = 0; v < nv; ++v) {
    const std::string name = nv == 1 ? "u" : kVarNames[v];
    VtkField point{name, std::vector<double>(3 * nc), false};
    VtkField avg{name + "_average", std::vector<double>(nc), true};
    for (int c = 0; c < nc; ++c) {
      const Eigen::Vector3d at = vertex_phi * u.cell(c).col(v);
      for (int i = 0; i < 3; ++i) point.values[3 * c + i] = at(i);
      avg.values[c] = cell_average(d, u.coeffs, c)(v);
    }
    fields.push_back(std::move(point));
    fields.push_back(std::move(avg));
  }
  return fields;
}

void write_field_vtk(const std::string& path, const Discretization& d,
                     const DGField& u, const std::vector<Vector2>& positions) {
  std::ostringstream title;
  title << "aledg " << d.model().name() << " P" << d.degree() << " t=" << u.t;
  write_vtk(path, d.topology(), positions, field_vtk_data(d, u), title.str());
}

VtkData read_vtk(std::istream& is) {
  VtkData data;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# vtk DataFile", 0) != 0) {
    throw Error("read_vtk: missing '# vtk DataFile' header");
  }
  std::getline(is, data.title);
  expect(is, "ASCII");
  expect(is, "DATASET");
  expect(is, "UNSTRUCTURED_GRID");
  expect(is, "POINTS");
  const int np = read_value<int>(is, "point count");
  read_value<std::string>(is, "point type");
  data.points.resize(np);
  for (auto& p : data.points) {
    for (double& x : p) x = read_value<double>(is, "point coordinate");
  }
  expect(is, "CELLS");
  const int nc = read_value<int>(is, "cell count");
  if (read_value<int>(is, "cell list size") != 4 * nc) {
    throw Error("read_vtk: only triangle cells are supported");
  }
  data.cells.resize(nc);
  for (auto& c : data.cells) {
    if (read_value<int>(is, "vertex count") != 3) throw Error("read_vtk: non-triangle cell");
    for (int& v : c) {
      v = read_value<int>(is, "cell vertex");
      if (v < 0 || v >= np) throw Error("read_vtk: cell vertex out of range");
    }
  }
  expect(is, "CELL_TYPES");
  if (read_value<int>(is, "cell type count") != nc) throw Error("read_vtk: CELL_TYPES count");
  for (int c = 0; c < nc; ++c) {
    if (read_value<int>(is, "cell type") != 5) throw Error("read_vtk: cell type is not 5");
  }
  std::string word;
  std::map<std::string, std::vector<double>>* target = nullptr;
  std::size_t count = 0;
  while (is >> word) {
    if (word == "CELL_DATA" || word == "POINT_DATA") {
      count = read_value<std::size_t>(is, "data count");
      const bool cell = word == "CELL_DATA";
      if (count != (cell ? data.cells.size() : data.points.size())) {
        throw Error("read_vtk: " + word + " count does not match");
      }
      target = cell ? &data.cell_data : &data.point_data;
    } else if (word == "SCALARS") {
      if (!target) throw Error("read_vtk: SCALARS before CELL_DATA/POINT_DATA");
      const auto name = read_value<std::string>(is, "field name");
      read_value<std::string>(is, "field type");
      std::string next = read_value<std::string>(is, "component count");
      if (next != "LOOKUP_TABLE") {
        if (next != "1") throw Error("read_vtk: only single-component scalars");
        next = read_value<std::string>(is, "LOOKUP_TABLE");
      }
      if (next != "LOOKUP_TABLE") throw Error("read_vtk: expected LOOKUP_TABLE");
      read_value<std::string>(is, "lookup table name");
      std::vector<double> values(count);
      for (double& x : values) x = read_value<double>(is, "field value");
      (*target)[name] = std::move(values);
    } else {
      throw Error("read_vtk: unexpected keyword '" + word + "'");
    }
  }
  return data;
}

VtkData read_vtk(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("read_vtk: cannot open " + path);
  return read_vtk(is);
}

std::string version_string() { return ALEDG_VERSION; }

std::string manifest_json(const RunConfig& config, const ErrorReport& report,
                          const RunInfo& info) {
  ordered_json j;
  j["program"] = "aledg";
  j["version"] = version_string();
  j["compiler"] = __VERSION__;
  j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
               std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  j["threads"] = thread_count();
  j["command"] = info.command;
  j["config_source"] = info.config_source;
  ordered_json cfg = ordered_json::object();
  for (const auto& [key, value] : config.echo) cfg[key] = value;
  j["config"] = cfg;
  ordered_json runs = ordered_json::array();
  for (const ResultRow& r : report.rows) {
    runs.push_back({{"k", r.k},
                    {"h0", r.h0},
                    {"integrator", rk_name(r.integrator)},
                    {"steps", r.steps},
                    {"wall_seconds", r.wall_seconds}});
  }
  j["runs"] = runs;
  j["sweep_wall_seconds"] = report.wall_seconds;
  j["total_wall_seconds"] = info.wall_seconds;
  return j.dump(2) + "\n";
}

std::string summary_json(const ErrorReport& report) {
  ordered_json j;
  j["experiment"] = experiment_name(report.experiment);
  j["passed"] = report.passed();
  j["failure"] = report.failure.empty() ? ordered_json() : ordered_json(report.failure);
  ordered_json checks = ordered_json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", num(c.value)},
                      {"requirement", c.requirement},
                      {"passed", c.passed}});
  }
  j["checks"] = checks;
  ordered_json rows = ordered_json::array();
  for (const ResultRow& r : report.rows) rows.push_back(row_json(r));
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const RunConfig& config,
                                       const ErrorReport& report,
                                       const RunInfo& info) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error("cannot create output directory " + config.output_dir + ": " + ec.message());
  const std::string stem = (fs::path(config.output_dir) / experiment_name(config.experiment)).string();
  std::vector<std::string> written;
  write_csv(stem + ".csv", report);
  written.push_back(stem + ".csv");
  auto dump = [&](const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os || !(os << text)) throw Error("cannot write " + path);
    written.push_back(path);
  };
  dump(stem + "_summary.json", summary_json(report));
  dump(stem + "_manifest.json", manifest_json(config, report, info));
  return written;
}

}  // namespace aledg
