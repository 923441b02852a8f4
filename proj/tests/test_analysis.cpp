#include <doctest.h>

#include <cmath>

#include "aledg/analysis.hpp"
#include "aledg/error.hpp"
#include "aledg/solver.hpp"
#include "support.hpp"

using namespace aledg;

namespace {
const Box kBox{0, 2, 0, 2};
}

TEST_CASE("convergence rates") {
  auto r = convergence_rates({1e-2, 2.5e-3}, {0.5, 0.25});
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(2.0));
  r = convergence_rates({3.09e-2, 6.77e-3}, {0.25, 0.125});
  CHECK(r[0] == doctest::Approx(2.19).epsilon(0.005));
  CHECK(convergence_rates({1e-2}, {0.5}).empty());
  CHECK_THROWS_AS(convergence_rates({1e-2, 1e-3}, {0.5, 0.2}), Error);
  CHECK_THROWS_AS(convergence_rates({1e-2}, {0.5, 0.25}), Error);
}

TEST_CASE("errors vanish for represented data") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  const auto geo = mesh_geometry(m.topology, m.coords);
  const Discretization d(m.topology, FluxModel::advection(Vector2(1, 1)), 2);
  const ExactSolution one = ExactSolution::constant_state(1.0);
  const DGField u = project_initial(d, geo, one);
  CHECK(l2_error(d, u, geo, one, 0.0) < 1e-14);
  CHECK(linf_error(d, u, geo, one, 0.0) < 1e-14);
  const Deviation dev = constant_state_deviation(d, u, geo, 1.0);
  CHECK(dev.linf < 1e-14);
  CHECK(dev.l2 < 1e-14);
  CHECK(total_mass(d, u, geo)(0) == doctest::Approx(4.0));
  CHECK(l2_norm(d, u, geo) == doctest::Approx(2.0));
  CHECK(max_abs_value(d, u) == doctest::Approx(1.0));
  CHECK_FALSE(has_non_finite(u));

  // a quadratic is represented exactly with k = 2: the projection error
  // measured against the same function is roundoff
  const auto quad = [](const Vector2& x) { return 1 + 0.1 * x.x() * x.y() - 0.2 * x.y() * x.y(); };
  const DGField q = aledg::testing::project(d, geo, quad);
  for (int c = 0; c < d.n_cells(); ++c) {
    const Vector2 xi(0.2, 0.3);
    CHECK(std::abs(evaluate(d, q, c, xi)(0) - quad(map_to_physical(geo[c], xi))) < 1e-13);
  }
}

TEST_CASE("L2 error of a known offset") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  const auto geo = mesh_geometry(m.topology, m.coords);
  const Discretization d(m.topology, FluxModel::advection(Vector2(1, 1)), 1);
  DGField u = project_initial(d, geo, ExactSolution::constant_state(1.0));
  u.coeffs.row(0).array() += 0.1 / std::sqrt(2.0);
  const ExactSolution one = ExactSolution::constant_state(1.0);
  CHECK(l2_error(d, u, geo, one, 0.0) == doctest::Approx(0.1 * 2.0));
  CHECK(linf_error(d, u, geo, one, 0.0) == doctest::Approx(0.1));
  CHECK(constant_state_deviation(d, u, geo, 1.0).linf == doctest::Approx(0.1));
}

TEST_CASE("bounds monitor") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  const auto geo = mesh_geometry(m.topology, m.coords);
  const Discretization d(m.topology, FluxModel::advection(Vector2(1, 1)), 1);
  const DGField u = project_initial(d, geo, ExactSolution::constant_state(1.0));
  const BoundsMargin b = bounds_monitor(d, u.coeffs, Bounds{0.5, 1.5});
  CHECK(b.upper == doctest::Approx(0.5));
  CHECK(b.lower == doctest::Approx(0.5));

  // unlimited P1 advection overshoots the initial range on a coarse moving mesh
  const MeshMotion motion = MeshMotion::sinusoidal(m.coords, kBox, default_sinusoid_period());
  const ExactSolution sine = ExactSolution::advected_sine();
  DGField v = project_initial(d, geo, sine);
  double worst = 1.0;
  evolve(d, v, motion, SolverConfig{}, 1.0, [&](const DGField& f, const StepReport&, int, double) {
    const BoundsMargin bm = bounds_monitor(d, f.coeffs, sine.range());
    worst = std::min({worst, bm.upper, bm.lower});
  });
  CHECK(worst < 0.0);

  // with the limiter the margins stay nonnegative
  SolverConfig cfg;
  cfg.limiter.bp_enabled = true;
  cfg.problem.wave_speed = WaveSpeedMode::Global;
  cfg.problem.bounds = sine.range();
  DGField w = project_initial(d, geo, sine);
  worst = 1.0;
  evolve(d, w, motion, cfg, 1.0, [&](const DGField& f, const StepReport&, int, double) {
    const BoundsMargin bm = bounds_monitor(d, f.coeffs, sine.range());
    worst = std::min({worst, bm.upper, bm.lower});
  });
  CHECK(worst >= -1e-12);
}

TEST_CASE("non-finite detection") {
  DGField u(3, 1, 2);
  CHECK_FALSE(has_non_finite(u));
  u.coeffs(1, 1) = std::numeric_limits<double>::infinity();
  CHECK(has_non_finite(u));
}
