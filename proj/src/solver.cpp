#include "aledg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aledg/error.hpp"
#include "aledg/parallel.hpp"

namespace aledg {

DGField project_initial(const Discretization& d,
                        const std::vector<CellGeometry>& geo,
                        const ExactSolution& exact, double t) {
  if (exact.n_vars != d.n_vars()) {
    throw Error("project_initial: solution/model variable count mismatch");
  }
  DGField u = d.make_field(t);
  const VolumeRule& rule = d.error_rule();
  const BasisTable& table = d.error_table();
  const Eigen::MatrixXd weighted_phi =
      table.phi.transpose() * rule.weights.asDiagonal();
  parallel_for(d.n_cells(), [&](int c) {
    Eigen::MatrixXd values(rule.size(), d.n_vars());
    for (int q = 0; q < rule.size(); ++q) {
      const Vector2 x = map_to_physical(geo[c], rule.points[q]);
      values.row(q) = exact_solution(exact, x.x(), x.y(), t).transpose();
    }
    u.cell(c) = weighted_phi * values;
  });
  return u;
}

namespace {

// Stack-sized work arrays; the residual loops must not touch the heap.
constexpr int kMaxPoints = 25;  // degree-8 volume rule
using PointValues = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::ColMajor, kMaxPoints, 4>;
using ModeValues = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::ColMajor, 10, 4>;

}  // namespace

Eigen::MatrixXd spatial_residual(const Discretization& d,
                                 const Eigen::MatrixXd& coeffs,
                                 const std::vector<CellGeometry>& geo, double t,
                                 const ProblemSetup& setup) {
  const FluxModel& model = d.model();
  const MeshTopology& topo = d.topology();
  const int nv = d.n_vars();
  const int nc = d.n_cells();
  const int k = d.degree();
  const int ne = k + 1;
  const VolumeRule& vol = d.volume_rule();
  const BasisTable& vtab = d.volume_table();
  if (vol.size() > kMaxPoints) throw Error("spatial_residual: volume rule too large");

  Eigen::MatrixXd rate(d.n_basis(), nv * nc);
  // Edge traces: rows are edge points, column block (3 c + nu) holds nv columns.
  Eigen::MatrixXd traces(ne, 3 * nc * nv);

  parallel_for(nc, [&](int c) {
    const auto C = coeffs.middleCols(c * nv, nv);
    PointValues U = vtab.phi * C;
    const Matrix2 adj_t = geo[c].adjugate().transpose();
    PointValues fx(vol.size(), nv), fy(vol.size(), nv);
    for (int q = 0; q < vol.size(); ++q) {
      const State uq = U.row(q).transpose();
      const Flux ref = ale_flux(model, grid_velocity(geo[c], vol.points[q]), uq) * adj_t;
      fx.row(q) = ref.col(0).transpose();
      fy.row(q) = ref.col(1).transpose();
    }
    ModeValues r = d.weighted_grad(0) * fx;
    r.noalias() += d.weighted_grad(1) * fy;
    rate.middleCols(c * nv, nv) = r;
    for (int nu = 0; nu < 3; ++nu) {
      traces.middleCols((3 * c + nu) * nv, nv).noalias() = d.edge_table(nu).phi * C;
    }
  });

  // One numerical flux per face point, oriented outward from the face owner.
  const int nf = static_cast<int>(topo.faces.size());
  Eigen::MatrixXd face_flux(ne, nf * nv);
  const bool global = setup.wave_speed == WaveSpeedMode::Global && model.scalar();
  const std::optional<Bounds> range = global ? setup.bounds : std::nullopt;
  parallel_for(nf, [&](int f) {
    const Face& face = topo.faces[f];
    const CellGeometry& g = geo[face.cell];
    const int nu = face.edge;
    const Vector2 normal = reference::edge_length(nu) * g.scaled_normals[nu];
    const Vector2 unit = normal.normalized();
    const auto inner = traces.middleCols((3 * face.cell + nu) * nv, nv);
    for (int b = 0; b < ne; ++b) {
      const Vector2& xi = d.edge_points(nu)[b];
      const Vector2 omega = grid_velocity(g, xi);
      const State a = inner.row(b).transpose();
      State ext;
      if (face.is_boundary()) {
        if (!setup.boundary_data) {
          throw Error("spatial_residual: boundary face without boundary data");
        }
        const Vector2 x = map_to_physical(g, xi);
        ext = exact_solution(*setup.boundary_data, x.x(), x.y(), t);
      } else {
        ext = traces.middleCols((3 * face.other_cell + face.other_edge) * nv, nv)
                  .row(k - b)
                  .transpose();
      }
      const double lambda = wave_speed(model, a, ext, omega, unit, range);
      face_flux.block(b, f * nv, 1, nv) =
          lax_friedrichs(model, omega, a, ext, normal, lambda).transpose();
    }
  });

  parallel_for(nc, [&](int c) {
    auto r = rate.middleCols(c * nv, nv);
    for (int nu = 0; nu < 3; ++nu) {
      const FaceRef& ref = d.face_of(c, nu);
      const auto flux = face_flux.middleCols(ref.face * nv, nv);
      if (ref.owner) {
        r.noalias() -= d.weighted_edge_phi(nu) * flux;
      } else {
        r.noalias() += d.weighted_edge_phi(nu) * flux.colwise().reverse();
      }
    }
  });
  return rate;
}

Eigen::MatrixXd gcl_stage_jacobians(
    const std::vector<std::vector<CellGeometry>>& stage_geo,
    const RKScheme& scheme, double dt) {
  const int s = scheme.stages;
  if (static_cast<int>(stage_geo.size()) < s) {
    throw Error("gcl_stage_jacobians: missing stage geometry");
  }
  const int nc = static_cast<int>(stage_geo[0].size());
  // dJ/dt = tr(adj(A) A_dot) is affine in t, evaluated exactly at stage times.
  Eigen::MatrixXd rate(s, nc);
  for (int j = 0; j < s; ++j) {
    for (int c = 0; c < nc; ++c) {
      rate(j, c) = stage_geo[j][c].gcl_div * stage_geo[j][c].J;
    }
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(s + 1, nc);
  for (int c = 0; c < nc; ++c) J(0, c) = stage_geo[0][c].J;
  for (int i = 1; i <= s; ++i) {
    for (int j = 0; j < i; ++j) {
      const double a = scheme.alpha(i - 1, j), b = scheme.beta(i - 1, j);
      if (a != 0.0) J.row(i) += a * J.row(j);
      if (b != 0.0) J.row(i) += dt * b * rate.row(j);
    }
  }
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i <= s; ++i) {
      if (!(J(i, c) > 0)) {
        std::ostringstream msg;
        msg << "nonpositive staged Jacobian in cell " << c << " (stage " << i
            << "); the mesh moves too far within one step";
        throw Error(msg.str());
      }
    }
  }
  return J;
}

Eigen::MatrixXd gcl_stage_jacobians(const MeshTopology& topo,
                                    const StepMotion& step,
                                    const RKScheme& scheme) {
  std::vector<std::vector<CellGeometry>> stage_geo;
  for (int j = 0; j < scheme.stages; ++j) {
    stage_geo.push_back(mesh_geometry(topo, step, step.t_n + scheme.gamma(j) * step.dt));
  }
  return gcl_stage_jacobians(stage_geo, scheme, step.dt);
}

StepReport rk_step(const Discretization& d, DGField& u, const MeshMotion& motion,
                   const RKScheme& scheme, double dt, const SolverConfig& config) {
  if (!(dt > 0)) throw Error("rk_step: nonpositive time step");
  const MeshTopology& topo = d.topology();
  const int s = scheme.stages;
  const int nv = d.n_vars();
  const int nc = d.n_cells();
  const double t_n = u.t;
  const StepMotion step = StepMotion::sample(motion, t_n, dt);

  std::vector<std::vector<CellGeometry>> stage_geo(s);
  for (int j = 0; j < s; ++j) {
    stage_geo[j] = mesh_geometry(topo, step, t_n + scheme.gamma(j) * dt);
  }
  StepReport report;
  report.end_geometry = mesh_geometry(topo, step, t_n + dt);
  report.staged_jacobians = gcl_stage_jacobians(stage_geo, scheme, dt);
  const Eigen::MatrixXd& J = report.staged_jacobians;

  std::vector<Eigen::MatrixXd> stages(s + 1);
  std::vector<Eigen::MatrixXd> rates(s);
  stages[0] = u.coeffs;
  for (int i = 1; i <= s; ++i) {
    const int last = i - 1;
    if (scheme.uses(last)) {
      rates[last] = spatial_residual(d, stages[last], stage_geo[last],
                                     t_n + scheme.gamma(last) * dt, config.problem);
    }
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(u.coeffs.rows(), u.coeffs.cols());
    parallel_for(nc, [&](int c) {
      auto out = next.middleCols(c * nv, nv);
      for (int j = 0; j < i; ++j) {
        const double a = scheme.alpha(i - 1, j), b = scheme.beta(i - 1, j);
        if (a != 0.0) out += (a * J(j, c)) * stages[j].middleCols(c * nv, nv);
        if (b != 0.0) out += (dt * b) * rates[j].middleCols(c * nv, nv);
      }
      out /= J(i, c);
    });
    const auto& geo = i < s ? stage_geo[i] : report.end_geometry;
    apply_limiters(d, next, geo, config.limiter);
    stages[i] = std::move(next);
  }
  // Rescale from the staged to the geometric Jacobian at t_{n+1}.
  Eigen::MatrixXd& result = stages[s];
  for (int c = 0; c < nc; ++c) {
    result.middleCols(c * nv, nv) *= J(s, c) / report.end_geometry[c].J;
  }
  u.coeffs = std::move(result);
  u.t = t_n + dt;
  return report;
}

namespace {

// Cell-wise CFL bound for the step [t_n, t_n + dt].
double cfl_bound(const Discretization& d, const DGField& u,
                 const MeshMotion& motion, const SolverConfig& config,
                 double dt) {
  const StepMotion step = StepMotion::sample(motion, u.t, dt);
  const auto g0 = mesh_geometry(d.topology(), step, u.t);
  const auto g1 = mesh_geometry(d.topology(), step, u.t + dt);
  const FluxModel& model = d.model();
  const int nv = d.n_vars();
  const double sigma = d.zxs().sigma_hat;
  const double perimeter = 2.0 + std::sqrt(2.0);
  const bool global =
      config.problem.wave_speed == WaveSpeedMode::Global && model.scalar();
  std::vector<double> bound(d.n_cells());
  parallel_for(d.n_cells(), [&](int c) {
    const auto C = u.coeffs.middleCols(c * nv, nv);
    double lambda = 0.0;
    for (const auto* g : {&g0[c], &g1[c]}) {
      for (int nu = 0; nu < 3; ++nu) {
        const ModeValues tr = d.edge_table(nu).phi * C;
        const Vector2& sn = g->scaled_normals[nu];
        const Vector2 unit = sn.normalized();
        for (int b = 0; b <= d.degree(); ++b) {
          const State a = tr.row(b).transpose();
          const double speed =
              wave_speed(model, a, a, grid_velocity(*g, d.edge_points(nu)[b]),
                         unit, global ? config.problem.bounds : std::nullopt);
          lambda = std::max(lambda, speed * sn.norm());
        }
      }
    }
    const double area_min = 0.5 * std::min(g0[c].J, g1[c].J);
    const double area_max = 0.5 * std::max(g0[c].J, g1[c].J);
    const double div = std::max(std::abs(g0[c].gcl_div), std::abs(g1[c].gcl_div));
    const double denom = sigma * div * area_max + perimeter * lambda;
    bound[c] = denom > 0 ? sigma * area_min / denom
                         : std::numeric_limits<double>::infinity();
  });
  return config.time.cfl * *std::min_element(bound.begin(), bound.end());
}

}  // namespace

double compute_dt(const Discretization& d, const DGField& u,
                  const MeshMotion& motion, const SolverConfig& config,
                  double t_final) {
  const double remaining = t_final - u.t;
  if (!(remaining > 0)) throw Error("compute_dt: final time already reached");
  const double cap = std::min(config.time.dt_max, remaining);
  double dt = cap;
  if (config.time.dt_override) {
    const StepMotion probe = StepMotion::sample(motion, u.t, cap);
    double w = 0.0;
    for (int v = 0; v < static_cast<int>(probe.start.size()); ++v) {
      w = std::max(w, probe.velocity(v).norm());
    }
    dt = w > 0 ? std::min(cap, d.topology().h0 / w) : cap;
  } else {
    // The admissible step depends on the geometry at t_n + dt.
    for (int it = 0; it < 30; ++it) {
      const double allowed = cfl_bound(d, u, motion, config, dt);
      if (allowed >= dt) break;
      dt = allowed;
    }
  }
  if (!(dt > 0) || !std::isfinite(dt)) {
    throw Error("compute_dt: nonpositive time step");
  }
  // Avoid a sliver step at the end.
  if (remaining - dt < 1e-10 * std::max(1.0, t_final)) dt = remaining;
  return dt;
}

EvolveResult evolve(const Discretization& d, DGField& u, const MeshMotion& motion,
                    const SolverConfig& config, double t_final,
                    const StepObserver& observer) {
  const RKScheme scheme = rk_scheme(config.time.integrator);
  EvolveResult result;
  result.min_dt = std::numeric_limits<double>::infinity();
  const double eps = 1e-13 * std::max(1.0, std::abs(t_final));
  while (u.t < t_final - eps) {
    const double dt = compute_dt(d, u, motion, config, t_final);
    const bool last = u.t + dt >= t_final - eps;
    const StepReport report = rk_step(d, u, motion, scheme, dt, config);
    if (last) u.t = t_final;
    ++result.steps;
    result.min_dt = std::min(result.min_dt, dt);
    result.max_dt = std::max(result.max_dt, dt);
    for (double x : u.coeffs.reshaped()) {
      if (!std::isfinite(x)) {
        std::ostringstream msg;
        msg << "non-finite coefficient after step " << result.steps << " (t = "
            << u.t << ")";
        throw Error(msg.str());
      }
    }
    if (observer) observer(u, report, result.steps, dt);
  }
  return result;
}

}  // namespace aledg
