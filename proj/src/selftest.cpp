#include "aledg/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "aledg/analysis.hpp"
#include "aledg/basis.hpp"
#include "aledg/error.hpp"
#include "aledg/limiters.hpp"
#include "aledg/solver.hpp"

namespace aledg {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  Vector2 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }

 private:
  std::mt19937_64 engine_;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

// Worst value against a limit; `passed` when worst <= limit.
PropertyResult bounded(const std::string& name, double worst, double limit) {
  return {name, worst <= limit, "worst " + sci(worst) + " (limit " + sci(limit) + ")"};
}

PropertyResult volume_exactness() {
  double worst = 0.0;
  for (int deg = 1; deg <= kMaxVolumeDegree; ++deg) {
    const VolumeRule rule = volume_rule(deg);
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        double q = 0.0;
        for (int i = 0; i < rule.size(); ++i) {
          q += rule.weights(i) * std::pow(rule.points[i].x(), a) *
               std::pow(rule.points[i].y(), b);
        }
        worst = std::max(worst, std::abs(q - monomial_integral(a, b)));
      }
    }
  }
  return bounded("volume rules integrate monomials exactly", worst, 1e-14);
}

PropertyResult edge_exactness() {
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const EdgeRule rule = edge_gauss(k);
    for (int p = 0; p <= 2 * k + 1; ++p) {
      double q = 0.0;
      for (int i = 0; i < rule.size(); ++i) q += rule.weights(i) * std::pow(rule.points(i) + 0.5, p);
      worst = std::max(worst, std::abs(q - 1.0 / (p + 1)));
    }
  }
  return bounded("edge rules integrate polynomials of degree 2k+1", worst, 1e-14);
}

std::vector<PropertyResult> zxs_properties() {
  double min_weight = 1.0, sum_err = 0.0, edge_dist = 0.0, moment_err = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const ZXSRule z = zxs_rule(k);
    const Eigen::VectorXd w = z.all_weights();
    min_weight = std::min(min_weight, w.minCoeff());
    sum_err = std::max(sum_err, std::abs(w.sum() - 1.0));
    for (int nu = 0; nu < 3; ++nu) {
      const auto [s, e] = reference::kEdgeVertices[nu];
      const Vector2 a = reference::vertices()[s], b = reference::vertices()[e];
      const Vector2 t = (b - a).normalized();
      for (const Vector2& p : z.edge_points[nu]) {
        const Vector2 r = p - a;
        edge_dist = std::max(edge_dist, std::abs(r.x() * t.y() - r.y() * t.x()));
      }
    }
    // The points must reproduce the average of every degree-k polynomial.
    const auto pts = z.all_points();
    for (int a = 0; a <= k; ++a) {
      for (int b = 0; a + b <= k; ++b) {
        double q = 0.0;
        for (size_t i = 0; i < pts.size(); ++i) {
          q += w(i) * std::pow(pts[i].x(), a) * std::pow(pts[i].y(), b);
        }
        moment_err = std::max(moment_err, std::abs(q - 2.0 * monomial_integral(a, b)));
      }
    }
  }
  return {{"bound-preserving point weights are positive", min_weight > 0,
           "smallest weight " + sci(min_weight)},
          bounded("bound-preserving weights sum to one", sum_err, 1e-14),
          bounded("bound-preserving edge points lie on the edges", edge_dist, 1e-15),
          bounded("bound-preserving points reproduce cell averages", moment_err, 1e-14)};
}

PropertyResult basis_orthonormality() {
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    const Basis basis(k);
    const VolumeRule rule = volume_rule(2 * k);
    const BasisTable t = basis.tabulate(rule.points);
    const Eigen::MatrixXd gram = t.phi.transpose() * rule.weights.asDiagonal() * t.phi;
    worst = std::max(worst, (gram - Eigen::MatrixXd::Identity(basis.size(), basis.size()))
                                .cwiseAbs()
                                .maxCoeff());
  }
  return bounded("basis is orthonormal on the reference cell", worst, 1e-13);
}

std::vector<PropertyResult> flux_properties(Rng& rng) {
  double consistency = 0.0, conservation = 0.0, monotone = 0.0, eflux = 0.0;
  const Bounds range{0.5, 1.5};
  for (const FluxModel& model :
       {FluxModel::advection(Vector2(1, 1)), FluxModel::burgers()}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Vector2 omega = rng.vec(-1, 1);
      const Vector2 n = rng.vec(-1, 1);
      const Vector2 unit = n.normalized();
      State a(1), b(1), c(1);
      a << rng.uniform(0.5, 1.5);
      b << rng.uniform(0.5, 1.5);
      c << a(0) + rng.uniform() * (b(0) - a(0));
      const double lam = wave_speed(model, a, b, omega, unit, range);
      const double lam_ab = wave_speed(model, a, b, omega, unit);
      const double lam_aa = wave_speed(model, a, a, omega, unit);

      const State same = lax_friedrichs(model, omega, a, a, n, lam_aa);
      const State exact = ale_flux(model, omega, a) * n;
      consistency = std::max(consistency, std::abs(same(0) - exact(0)));

      const State fwd = lax_friedrichs(model, omega, a, b, n, lam_ab);
      const State bwd = lax_friedrichs(model, omega, b, a, -n, lam_ab);
      conservation = std::max(conservation, std::abs(fwd(0) + bwd(0)));

      // Nondecreasing in the inner state, nonincreasing in the outer one,
      // for a frozen global wave speed.
      const double eps = 1e-6;
      State a2 = a, b2 = b;
      a2(0) = std::min(1.5, a(0) + eps);
      b2(0) = std::min(1.5, b(0) + eps);
      const double base = lax_friedrichs(model, omega, a, b, n, lam)(0);
      const double da = lax_friedrichs(model, omega, a2, b, n, lam)(0) - base;
      const double db = lax_friedrichs(model, omega, a, b2, n, lam)(0) - base;
      monotone = std::max({monotone, -da, db});

      // E-flux: sign(b - a) (F(a, b) - g(c) n) <= 0 for c between a and b.
      const double gc = (ale_flux(model, omega, c) * n)(0);
      const double s = b(0) > a(0) ? 1.0 : -1.0;
      eflux = std::max(eflux, s * (fwd(0) - gc));
    }
  }
  return {bounded("numerical flux is consistent", consistency, 1e-14),
          bounded("numerical flux is conservative", conservation, 1e-14),
          bounded("numerical flux is monotone", monotone, 1e-15),
          bounded("numerical flux is an E-flux", eflux, 1e-14)};
}

std::vector<PropertyResult> limiter_properties(Rng& rng) {
  const Box box{0, 2, 0, 2};
  const Mesh mesh = build_criss_mesh(box, 0.5, BoundaryKind::Periodic);
  double avg_change = 0.0, idempotence = 0.0, violation = 0.0, slope_avg = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const Discretization d(mesh.topology, FluxModel::advection(Vector2(1, 1)), k);
    const auto geo = mesh_geometry(mesh.topology, mesh.coords);
    const Bounds bounds{0.5, 1.5};
    DGField u = d.make_field();
    for (int c = 0; c < d.n_cells(); ++c) {
      u.coeffs(0, c) = rng.uniform(0.5, 1.5) / std::sqrt(2.0);
      for (int i = 1; i < d.n_basis(); ++i) u.coeffs(i, c) = rng.uniform(-0.4, 0.4);
    }
    Eigen::MatrixXd limited = u.coeffs;
    bound_preserving_limit(d, limited, bounds);
    avg_change = std::max(avg_change, (limited.row(0) - u.coeffs.row(0)).cwiseAbs().maxCoeff());
    Eigen::MatrixXd twice = limited;
    bound_preserving_limit(d, twice, bounds);
    idempotence = std::max(idempotence, (twice - limited).cwiseAbs().maxCoeff());
    const BoundsMargin m = bounds_monitor(d, limited, bounds);
    violation = std::max({violation, -m.upper, -m.lower});

    Eigen::MatrixXd sloped = u.coeffs;
    slope_limit(d, sloped, geo);
    slope_avg = std::max(slope_avg, (sloped.row(0) - u.coeffs.row(0)).cwiseAbs().maxCoeff());
  }
  return {bounded("bound-preserving limiter keeps cell averages", avg_change, 0.0),
          bounded("bound-preserving limiter is idempotent", idempotence, 1e-15),
          bounded("bound-preserving limiter enforces the bounds", violation, 1e-14),
          bounded("slope limiter keeps cell averages", slope_avg, 0.0)};
}

PropertyResult normal_antisymmetry(Rng& rng) {
  const Box box{0, 2, 0, 2};
  const Mesh mesh = build_criss_mesh(box, 0.25, BoundaryKind::Periodic);
  const MeshMotion motion = MeshMotion::sinusoidal(mesh.coords, box, default_sinusoid_period());
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto geo = mesh_geometry(mesh.topology, motion.positions(rng.uniform(0, 5)));
    for (const Face& f : mesh.topology.faces) {
      if (f.is_boundary()) continue;
      const Vector2 a = reference::edge_length(f.edge) * geo[f.cell].scaled_normals[f.edge];
      const Vector2 b =
          reference::edge_length(f.other_edge) * geo[f.other_cell].scaled_normals[f.other_edge];
      worst = std::max(worst, (a + b).cwiseAbs().maxCoeff());
    }
  }
  return bounded("shared edges have opposite normals", worst, 1e-14);
}

// Short moving-mesh runs: global conservation and L2 non-growth.
std::vector<PropertyResult> evolution_properties() {
  const Box box{0, 2, 0, 2};
  const Mesh mesh = build_criss_mesh(box, 0.25, BoundaryKind::Periodic);
  const MeshMotion motion = MeshMotion::sinusoidal(mesh.coords, box, default_sinusoid_period());
  double drift = 0.0, growth = -INFINITY;
  for (const auto& [model, exact] :
       {std::pair{FluxModel::advection(Vector2(1, 1)), ExactSolution::advected_sine()},
        std::pair{FluxModel::burgers(), ExactSolution::burgers_sine()}}) {
    for (int k = 1; k <= 2; ++k) {
      const Discretization d(mesh.topology, model, k);
      const auto geo0 = mesh_geometry(mesh.topology, motion.positions(0.0));
      DGField u = project_initial(d, geo0, exact);
      const Eigen::VectorXd m0 = total_mass(d, u, geo0);
      const double n0 = l2_norm(d, u, geo0);
      SolverConfig cfg;
      cfg.time.integrator = RKId::SSPRK54;
      evolve(d, u, motion, cfg, 0.1, [&](const DGField& f, const StepReport& r, int, double) {
        growth = std::max(growth, l2_norm(d, f, r.end_geometry) - n0);
        drift = std::max(drift, std::abs(total_mass(d, f, r.end_geometry)(0) - m0(0)) /
                                    std::abs(m0(0)));
      });
    }
  }
  return {bounded("total mass is conserved on moving meshes", drift, 1e-12),
          bounded("L2 norm does not grow on periodic runs", growth, 1e-10)};
}

}  // namespace

std::vector<PropertyResult> run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PropertyResult> out;
  auto guarded = [&](const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("error: ") + e.what()});
    }
  };
  auto append = [&](std::vector<PropertyResult> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  guarded("volume rules", [&] { out.push_back(volume_exactness()); });
  guarded("edge rules", [&] { out.push_back(edge_exactness()); });
  guarded("bound-preserving points", [&] { append(zxs_properties()); });
  guarded("basis", [&] { out.push_back(basis_orthonormality()); });
  guarded("fluxes", [&] { append(flux_properties(rng)); });
  guarded("limiters", [&] { append(limiter_properties(rng)); });
  guarded("normals", [&] { out.push_back(normal_antisymmetry(rng)); });
  guarded("evolution", [&] { append(evolution_properties()); });
  return out;
}

}  // namespace aledg
