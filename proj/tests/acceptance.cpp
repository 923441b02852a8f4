// End-to-end acceptance run: one PASS/FAIL line per criterion, exit 1 if any
// criterion fails that was not declared with --known-failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aledg/config.hpp"
#include "aledg/error.hpp"
#include "aledg/experiment.hpp"
#include "aledg/parallel.hpp"
#include "aledg/selftest.hpp"
#include "aledg/solver.hpp"

using namespace aledg;

namespace {

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    detail << (detail.tellp() > 0 ? "; " : "") << (ok ? "" : "[x] ") << what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ErrorReport sweep(const std::string& text) {
  const ErrorReport r = run_experiment(parse_config(text, "acceptance"));
  if (!r.failure.empty()) throw Error(r.failure);
  return r;
}

// Rows of one degree and integrator, coarse to fine.
std::vector<ResultRow> rows_of(const ErrorReport& r, int k, RKId rk) {
  std::vector<ResultRow> out;
  for (const auto& row : r.rows) {
    if (row.k == k && row.integrator == rk) out.push_back(row);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.h0 > b.h0; });
  if (out.empty()) throw Error("no rows for P" + std::to_string(k) + " " + rk_name(rk));
  return out;
}

double final_order(const ErrorReport& r, int k, RKId rk) {
  const auto rows = rows_of(r, k, rk);
  if (!rows.back().order) throw Error("no order for P" + std::to_string(k));
  return *rows.back().order;
}

double worst_margin(const ErrorReport& r) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : r.rows) {
    if (!row.min_upper || !row.min_lower) throw Error("bound monitors missing");
    m = std::min({m, *row.min_upper, *row.min_lower});
  }
  return m;
}

void within(Verdict& v, const std::string& label, double x, double lo, double hi) {
  v.require(x >= lo && x <= hi, label + " " + fmt("%.3g", x) + " in [" + fmt("%g", lo) +
                                    ", " + fmt("%g", hi) + "]");
}

void elapsed_below(Verdict& v, double seconds, double limit) {
  v.require(seconds < limit, fmt("%.0f s", seconds) + " < " + fmt("%.0f s", limit));
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Verdict gcl_exactness() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const char* eq : {"advection", "burgers"}) {
    const ErrorReport r = sweep(std::string(
        "[run]\nexperiment = constant_gcl\n[model]\nequation = ") + eq +
        "\n[discretization]\nk = 1, 2, 3\nh0 = 1/2, 1/4, 1/8\n[time]\nintegrator = tvdrk3\n");
    for (const auto& row : r.rows) worst = std::max(worst, row.l2);
  }
  v.require(worst <= 1e-12, "sinusoid L2 deviation " + fmt("%.2e", worst) + " <= 1e-12");
  const ErrorReport tm = sweep("[run]\nexperiment = two_mesh_gcl\n");
  const double fe = rows_of(tm, 1, RKId::ForwardEuler).back().linf;
  within(v, "two-mesh euler_fwd Linf", fe, 5e-3, 5e-2);
  for (RKId rk : {RKId::TVDRK2, RKId::TVDRK3}) {
    const double e = rows_of(tm, 1, rk).back().linf;
    v.require(e <= 1e-12, "two-mesh " + rk_name(rk) + " Linf " + fmt("%.2e", e) + " <= 1e-12");
  }
  v.require(tm.rows.front().cells == 32, "two-mesh on 32 cells");
  elapsed_below(v, since(t0), 60);
  return v;
}

Verdict staged_jacobians() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> pos(-1.0, 1.0), vel(-0.5, 0.5);
  const double dt = 0.1;
  double worst_rk = 0.0, least_fe = std::numeric_limits<double>::infinity();
  auto area2 = [](const std::array<Vector2, 3>& p) {
    const Vector2 a = p[1] - p[0], b = p[2] - p[0];
    return a.x() * b.y() - a.y() * b.x();
  };
  int made = 0;
  while (made < 1000) {
    std::array<Vector2, 3> p, w;
    for (int i = 0; i < 3; ++i) {
      p[i] = Vector2(pos(rng), pos(rng));
      w[i] = Vector2(vel(rng), vel(rng));
    }
    std::array<Vector2, 3> end;
    for (int i = 0; i < 3; ++i) end[i] = p[i] + dt * w[i];
    // keep well shaped, positively oriented cells whose area really changes
    // at second order within the step
    const Vector2 dw1 = w[1] - w[0], dw2 = w[2] - w[0];
    if (area2(p) < 0.3 || area2(end) < 0.3 ||
        std::abs(dw1.x() * dw2.y() - dw1.y() * dw2.x()) < 0.05) {
      continue;
    }
    ++made;
    const double exact = area2(end);
    for (RKId id : {RKId::ForwardEuler, RKId::TVDRK2, RKId::TVDRK3, RKId::SSPRK54}) {
      const RKScheme s = rk_scheme(id);
      std::vector<std::vector<CellGeometry>> stage_geo;
      for (int j = 0; j < s.stages; ++j) {
        std::array<Vector2, 3> at;
        for (int i = 0; i < 3; ++i) at[i] = p[i] + s.gamma(j) * dt * w[i];
        stage_geo.push_back({cell_geometry(at, w)});
      }
      const double J = gcl_stage_jacobians(stage_geo, s, dt)(s.stages, 0);
      const double rel = std::abs(J - exact) / exact;
      if (id == RKId::ForwardEuler) least_fe = std::min(least_fe, rel);
      else worst_rk = std::max(worst_rk, rel);
    }
  }
  v.require(worst_rk <= 1e-12, "tvdrk2/tvdrk3/ssprk54 worst " + fmt("%.2e", worst_rk) + " <= 1e-12");
  v.require(least_fe > 1e-6, "euler_fwd least " + fmt("%.2e", least_fe) + " > 1e-6");
  elapsed_below(v, since(t0), 10);
  return v;
}

Verdict advection_convergence() {
  Verdict v;
  const auto t0 = Clock::now();
  const ErrorReport r = sweep(
      "[run]\nexperiment = advection\n[discretization]\nk = 1, 2, 3\n"
      "h0 = 1/2, 1/4, 1/8, 1/16\n[time]\nintegrator = ssprk54\n");
  const RKId rk = RKId::SSPRK54;
  within(v, "P1 order", final_order(r, 1, rk), 1.8, 2.3);
  within(v, "P1 error/1.59e-3", rows_of(r, 1, rk).back().l2 / 1.59e-3, 1.0 / 3, 3.0);
  within(v, "P2 order", final_order(r, 2, rk), 2.6, 3.2);
  within(v, "P3 order", final_order(r, 3, rk), 3.6, 4.3);
  within(v, "P3 error/1.22e-6", rows_of(r, 3, rk).back().l2 / 1.22e-6, 1.0 / 3, 3.0);
  elapsed_below(v, since(t0), 600);
  return v;
}

Verdict maximum_principle() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::string base =
      "[run]\nexperiment = advection\n[discretization]\nk = 1, 2, 3\n"
      "h0 = 1/2, 1/4, 1/8\n[time]\nintegrator = tvdrk2, tvdrk3\n"
      "[limiter]\nwave_speed = global\n";
  const ErrorReport limited = sweep(base + "bound_preserving = true\n");
  const ErrorReport plain = sweep(base + "bound_preserving = false\n");
  const double m = worst_margin(limited);
  v.require(m >= -1e-12, "worst bound margin " + fmt("%.2e", m) + " >= -1e-12");
  for (RKId rk : {RKId::TVDRK2, RKId::TVDRK3}) {
    for (int k = 1; k <= 3; ++k) {
      const double a = final_order(limited, k, rk), b = final_order(plain, k, rk);
      v.require(std::abs(a - b) <= 0.3, "P" + std::to_string(k) + " " + rk_name(rk) +
                                            " order " + fmt("%.2f", a) + " vs unlimited " +
                                            fmt("%.2f", b));
    }
  }
  elapsed_below(v, since(t0), 600);
  return v;
}

Verdict burgers_convergence() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::string base =
      "[run]\nexperiment = burgers\n[discretization]\nk = 1, 2\n"
      "h0 = 1/2, 1/4, 1/8, 1/16\n";
  const ErrorReport r = sweep(base);
  within(v, "P1 order", final_order(r, 1, RKId::SSPRK54), 1.8, 2.3);
  within(v, "P2 order", final_order(r, 2, RKId::SSPRK54), 2.4, 3.0);
  const ErrorReport bp =
      sweep(base + "[limiter]\nbound_preserving = true\nwave_speed = global\n");
  const double m = worst_margin(bp);
  v.require(m >= -1e-12, "limited worst bound margin " + fmt("%.2e", m) + " >= -1e-12");
  elapsed_below(v, since(t0), 600);
  return v;
}

Verdict euler_plane() {
  Verdict v;
  const auto t0 = Clock::now();
  const ErrorReport r = sweep(
      "[run]\nexperiment = euler_plane\n[discretization]\nk = 1, 2\nh0 = 1/2, 1/4, 1/8\n");
  // reference final density orders at these levels
  const double table[] = {2.32, 2.56};
  for (int k = 1; k <= 2; ++k) {
    const double o = final_order(r, k, RKId::SSPRK54);
    within(v, "P" + std::to_string(k) + " density order", o, table[k - 1] - 0.4,
           table[k - 1] + 0.4);
  }
  elapsed_below(v, since(t0), 600);
  return v;
}

Verdict euler_vortex() {
  Verdict v;
  const auto t0 = Clock::now();
  const ErrorReport r = sweep(
      "[run]\nexperiment = euler_vortex\n[discretization]\nk = 2\nh0 = 1, 1/2\n");
  const auto rows = rows_of(r, 2, RKId::SSPRK54);
  const double ratio = rows[0].l2 / rows[1].l2;
  v.require(ratio >= std::pow(2.0, 2.4), "density error ratio " + fmt("%.2f", ratio) +
                                             " >= " + fmt("%.2f", std::pow(2.0, 2.4)));
  elapsed_below(v, since(t0), 900);
  return v;
}

Verdict property_suite() {
  Verdict v;
  const auto t0 = Clock::now();
  int failed = 0, total = 0;
  for (const auto& p : run_selftest(7)) {
    ++total;
    if (!p.passed) {
      ++failed;
      v.require(false, p.name + ": " + p.detail);
    }
  }
  v.require(failed == 0 && total > 0,
            std::to_string(total - failed) + "/" + std::to_string(total) + " properties");
  elapsed_below(v, since(t0), 60);
  return v;
}

Verdict shock_robustness() {
  Verdict v;
  for (const char* motion : {"static", "sinusoidal"}) {
    const ErrorReport r = sweep(
        std::string("[run]\nexperiment = burgers_shock\n[mesh]\nmotion = ") + motion + "\n");
    const ResultRow& row = r.rows.back();
    const bool finite = std::isfinite(row.max_abs) && std::isfinite(row.mass_drift);
    v.require(finite, std::string(motion) + " finite");
    v.require(row.max_abs <= 1.6, std::string(motion) + " max|u| " + fmt("%.4f", row.max_abs));
    v.require(row.mass_drift <= 1e-12,
              std::string(motion) + " mass drift " + fmt("%.1e", row.mass_drift));
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9."};
  std::vector<int> known, only;
  app.add_option("--known-failure", known,
                 "criteria expected to fail; the run passes only if exactly these fail");
  app.add_option("--only", only, "run a subset of criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"constant-state preservation", gcl_exactness},
      {"staged Jacobian exactness", staged_jacobians},
      {"advection convergence", advection_convergence},
      {"maximum principle", maximum_principle},
      {"Burgers convergence", burgers_convergence},
      {"Euler plane wave", euler_plane},
      {"Euler vortex", euler_vortex},
      {"property suite", property_suite},
      {"shock robustness", shock_robustness},
  };
  std::cout << "threads: " << thread_count() << std::endl;
  const std::set<int> expected(known.begin(), known.end());
  bool as_expected = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    bool passed = false;
    std::string detail;
    try {
      const Verdict v = criteria[i].second();
      passed = v.passed;
      detail = v.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    std::cout << (passed ? "PASS " : "FAIL ") << id << " " << criteria[i].first << " ("
              << fmt("%.1f s", since(t0)) << "): " << detail
              << (!passed && expected.count(id) ? " [known failure]" : "") << std::endl;
    as_expected = as_expected && (passed != (expected.count(id) > 0));
  }
  return as_expected ? 0 : 1;
}
