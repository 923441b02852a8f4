#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "aledg/error.hpp"
#include "aledg/mesh.hpp"

using namespace aledg;

namespace {
const Box kBox{0, 2, 0, 2};
}

TEST_CASE("criss mesh counts") {
  const Mesh m1 = build_criss_mesh(kBox, 1.0, BoundaryKind::Periodic);
  CHECK(m1.topology.num_cells() == 8);
  CHECK(m1.topology.num_vertices == 4);
  CHECK(build_criss_mesh(kBox, 1.0, BoundaryKind::Dirichlet).topology.num_vertices == 9);
  CHECK(build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic).topology.num_cells() == 32);
  CHECK_THROWS_AS(build_criss_mesh(Box{0, 1, 0, 2}, 0.3, BoundaryKind::Periodic), Error);
}

TEST_CASE("cells are positively oriented and adjacency is symmetric") {
  for (auto diag : {Diagonal::LowerLeftUpperRight, Diagonal::LowerRightUpperLeft}) {
    for (auto bc : {BoundaryKind::Periodic, BoundaryKind::Dirichlet}) {
      const Mesh m = build_criss_mesh(kBox, 0.5, bc, diag);
      const MeshTopology& t = m.topology;
      for (int c = 0; c < t.num_cells(); ++c) {
        const auto v = cell_vertices(t, m.coords, c);
        CHECK(signed_area(v) == doctest::Approx(0.125));
        for (int nu = 0; nu < 3; ++nu) {
          const Neighbor& n = neighbor(t, c, nu);
          if (n.is_boundary()) {
            CHECK(bc == BoundaryKind::Dirichlet);
            continue;
          }
          const Neighbor& back = neighbor(t, n.cell, n.edge);
          CHECK(back.cell == c);
          CHECK(back.edge == nu);
          CHECK((back.shift + n.shift).norm() == 0.0);
          // the shared edge coincides after the shift, reversed
          const auto w = cell_vertices(t, m.coords, n.cell);
          const auto [a, b] = reference::kEdgeVertices[nu];
          const auto [p, q] = reference::kEdgeVertices[n.edge];
          CHECK((v[a] + n.shift - w[q]).norm() < 1e-14);
          CHECK((v[b] + n.shift - w[p]).norm() < 1e-14);
        }
      }
    }
  }
}

TEST_CASE("periodic wrap shift") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  bool seen = false;
  for (int c = 0; c < m.topology.num_cells(); ++c) {
    const auto v = cell_vertices(m.topology, m.coords, c);
    for (int nu = 0; nu < 3; ++nu) {
      const auto [a, b] = reference::kEdgeVertices[nu];
      if (std::abs(v[a].x() - 2.0) < 1e-14 && std::abs(v[b].x() - 2.0) < 1e-14) {
        CHECK((neighbor(m.topology, c, nu).shift - Vector2(-2, 0)).norm() == 0.0);
        seen = true;
      }
    }
  }
  CHECK(seen);
}

TEST_CASE("faces cover every interior edge once") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  CHECK(m.topology.faces.size() == 48u);
  const Mesh d = build_criss_mesh(kBox, 0.5, BoundaryKind::Dirichlet);
  int boundary = 0;
  for (const Face& f : d.topology.faces) boundary += f.is_boundary();
  CHECK(boundary == 16);
}

TEST_CASE("sinusoidal motion") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  const double t0 = default_sinusoid_period();
  CHECK(t0 == doctest::Approx(std::sqrt(125.0)));
  const MeshMotion mo = MeshMotion::sinusoidal(m.coords, kBox, t0);
  for (int v = 0; v < mo.num_vertices(); ++v) {
    CHECK(mo.vertex_position(v, 0.0) == m.coords[v]);
    CHECK((mo.vertex_position(v, t0 / 2) - m.coords[v]).norm() < 1e-15);
  }
  // vertex (0.5, 0.5): spatial factor 1
  const int v = 1 * 4 + 1;
  REQUIRE((m.coords[v] - Vector2(0.5, 0.5)).norm() < 1e-15);
  const double t = 0.7;
  const Vector2 expect(0.5 + 0.3 * std::sin(2 * M_PI * t / t0),
                       0.5 + 0.2 * std::sin(4 * M_PI * t / t0));
  CHECK((mo.vertex_position(v, t) - expect).norm() < 1e-15);
}

TEST_CASE("two-mesh motion reaches the target") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  std::vector<Vector2> target = m.coords;
  for (auto& p : target) p += Vector2(0.01, -0.02);
  const MeshMotion mo = MeshMotion::two_mesh(m.coords, target, 1.0);
  const auto end = mo.positions(1.0);
  for (size_t i = 0; i < end.size(); ++i) CHECK((end[i] - target[i]).norm() < 1e-15);
  CHECK_THROWS_AS(mo.positions(1.5), Error);
}

TEST_CASE("reference cell geometry") {
  const std::array<Vector2, 3> v{Vector2(0, 0), Vector2(1, 0), Vector2(0, 1)};
  const std::array<Vector2, 3> z{Vector2::Zero(), Vector2::Zero(), Vector2::Zero()};
  const CellGeometry g = cell_geometry(v, z);
  CHECK((g.A - Matrix2::Identity()).norm() == 0.0);
  CHECK(g.J == 1.0);
  CHECK(g.gcl_div == 0.0);
  CHECK((scaled_edge_normal(g, 2) - Vector2(0, -1)).norm() < 1e-15);
  CHECK((scaled_edge_normal(g, 1) - Vector2(-1, 0)).norm() < 1e-15);
  CHECK((scaled_edge_normal(g, 0) - Vector2(1, 1) / std::sqrt(2.0)).norm() < 1e-15);
  CHECK((map_to_physical(g, Vector2(1.0 / 3, 1.0 / 3)) - Vector2(1.0 / 3, 1.0 / 3)).norm() < 1e-15);
}

TEST_CASE("scaled geometry, translation and dilation") {
  const std::array<Vector2, 3> v{Vector2(1, 1), Vector2(3, 1), Vector2(1, 3)};
  const Vector2 c(0.3, -0.2);
  const CellGeometry moving = cell_geometry(v, {c, c, c});
  CHECK(moving.J == doctest::Approx(4.0));
  CHECK((scaled_edge_normal(moving, 2) - Vector2(0, -2)).norm() < 1e-15);
  CHECK(moving.A_dot.norm() == 0.0);
  CHECK(moving.gcl_div == 0.0);
  CHECK((grid_velocity(moving, Vector2(0.2, 0.7)) - c).norm() < 1e-15);
  CHECK((map_to_physical(moving, Vector2(1, 0)) - v[1]).norm() < 1e-15);
  CHECK((map_to_physical(moving, Vector2(0, 1)) - v[2]).norm() < 1e-15);
  CHECK((map_to_physical(moving, Vector2(1.0 / 3, 1.0 / 3)) - (v[0] + v[1] + v[2]) / 3).norm() < 1e-14);
  CHECK((map_to_reference(moving, v[2]) - Vector2(0, 1)).norm() < 1e-15);

  // v(t) = (1+t) v(0): J = (1+t)^2 J(0), div = 2/(1+t)
  const std::array<Vector2, 3> v0{Vector2(0, 0), Vector2(1, 0), Vector2(0.2, 0.8)};
  const double t = 0.4;
  std::array<Vector2, 3> vt;
  for (int i = 0; i < 3; ++i) vt[i] = (1 + t) * v0[i];
  const CellGeometry g0 = cell_geometry(v0, v0);
  const CellGeometry gt = cell_geometry(vt, v0);
  CHECK(gt.J == doctest::Approx((1 + t) * (1 + t) * g0.J).epsilon(1e-14));
  CHECK(gt.gcl_div == doctest::Approx(2 / (1 + t)).epsilon(1e-14));
}

TEST_CASE("scaled normals carry physical edge lengths") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Vector2, 3> v{Vector2(0, 0), Vector2(1, 0), Vector2(0, 1)};
    for (auto& p : v) p += 0.2 * Vector2(u(rng), u(rng));
    const CellGeometry g = cell_geometry(v, v);
    for (int nu = 0; nu < 3; ++nu) {
      const auto [a, b] = reference::kEdgeVertices[nu];
      const double len = (v[b] - v[a]).norm();
      CHECK(scaled_edge_normal(g, nu).norm() * reference::edge_length(nu) ==
            doctest::Approx(len).epsilon(1e-13));
      CHECK((edge_length_normal(v, nu) -
             scaled_edge_normal(g, nu) * reference::edge_length(nu)).norm() < 1e-14);
    }
    // closed surface
    Vector2 s = Vector2::Zero();
    for (int nu = 0; nu < 3; ++nu) s += edge_length_normal(v, nu);
    CHECK(s.norm() < 1e-14);
  }
}

TEST_CASE("gcl_div times J is linear in time within a step") {
  const Mesh m = build_criss_mesh(kBox, 0.5, BoundaryKind::Periodic);
  const MeshMotion mo = MeshMotion::sinusoidal(m.coords, kBox, default_sinusoid_period());
  const StepMotion step = StepMotion::sample(mo, 0.3, 0.2);
  for (int c = 0; c < m.topology.num_cells(); ++c) {
    auto rate = [&](double t) {
      const CellGeometry g = cell_geometry(m.topology, step, c, t);
      return g.gcl_div * g.J;
    };
    const double mid = rate(0.4), lin = 0.5 * (rate(0.3) + rate(0.5));
    CHECK(std::abs(mid - lin) < 1e-14);
  }
}

TEST_CASE("vtk mesh output") {
  const Mesh m = build_criss_mesh(kBox, 1.0, BoundaryKind::Periodic);
  std::ostringstream os;
  write_vtk(os, m.topology, m.coords);
  const std::string s = os.str();
  CHECK(s.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(s.find("CELL_TYPES 8") != std::string::npos);
  std::vector<VtkField> bad{{"u", std::vector<double>(3, 0.0), true}};
  CHECK_THROWS_AS(write_vtk(os, m.topology, m.coords, bad), Error);
}
