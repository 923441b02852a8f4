#include "aledg/mesh.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "aledg/error.hpp"
#include "aledg/parallel.hpp"

namespace aledg {

namespace {

int divisions(double length, double h0, const char* dim) {
  const double n = length / h0;
  const double rounded = std::round(n);
  if (rounded < 1 || std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
    std::ostringstream msg;
    msg << "build_criss_mesh: " << dim << "-extent " << length
        << " is not an integer multiple of h0 = " << h0;
    throw Error(msg.str());
  }
  return static_cast<int>(rounded);
}

// sin(2*pi*s) with exact zeros at half-integers s.
double sin_2pi(double s) {
  const double u = 2.0 * s;
  const double n = std::round(u);
  if (u == n) return 0.0;
  const double v = std::sin(std::numbers::pi * (u - n));
  return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

Vector2 lerp(const Vector2& a, const Vector2& b, double theta) {
  return a + theta * (b - a);
}

}  // namespace

Mesh build_criss_mesh(const Box& box, double h0, BoundaryKind bc,
                      Diagonal diagonal) {
  if (!(h0 > 0)) throw Error("build_criss_mesh: h0 must be positive");
  if (!(box.width() > 0) || !(box.height() > 0)) {
    throw Error("build_criss_mesh: empty domain box");
  }
  const int nx = divisions(box.width(), h0, "x");
  const int ny = divisions(box.height(), h0, "y");
  const bool periodic = bc == BoundaryKind::Periodic;
  const int vx = periodic ? nx : nx + 1;
  const int vy = periodic ? ny : ny + 1;
  const double hx = box.width() / nx;
  const double hy = box.height() / ny;

  Mesh mesh;
  MeshTopology& topo = mesh.topology;
  topo.box = box;
  topo.bc = bc;
  topo.h0 = h0;
  topo.num_vertices = vx * vy;
  mesh.coords.resize(topo.num_vertices);
  topo.boundary_vertex.assign(topo.num_vertices, false);
  for (int j = 0; j < vy; ++j) {
    for (int i = 0; i < vx; ++i) {
      const int id = j * vx + i;
      mesh.coords[id] = Vector2(box.x_l + i * hx, box.y_l + j * hy);
      topo.boundary_vertex[id] = i == 0 || j == 0 || i == nx || j == ny;
    }
  }

  // Unwrapped lattice coordinates of every cell vertex, used for matching.
  std::vector<std::array<Eigen::Vector2i, 3>> lattice;
  auto add_cell = [&](std::array<Eigen::Vector2i, 3> p) {
    std::array<int, 3> ids;
    std::array<Vector2, 3> offsets;
    for (int l = 0; l < 3; ++l) {
      int i = p[l].x(), j = p[l].y();
      offsets[l] = Vector2::Zero();
      if (periodic) {
        if (i == nx) { i = 0; offsets[l].x() = box.width(); }
        if (j == ny) { j = 0; offsets[l].y() = box.height(); }
      }
      ids[l] = j * vx + i;
    }
    topo.cells.push_back(ids);
    topo.vertex_offsets.push_back(offsets);
    lattice.push_back(p);
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Eigen::Vector2i p00(i, j), p10(i + 1, j), p01(i, j + 1),
          p11(i + 1, j + 1);
      if (diagonal == Diagonal::LowerLeftUpperRight) {
        add_cell({p00, p10, p11});
        add_cell({p00, p11, p01});
      } else {
        add_cell({p00, p10, p01});
        add_cell({p10, p11, p01});
      }
    }
  }

  // Edges are identified by twice their (wrapped) lattice midpoint.
  const int n_cells = topo.num_cells();
  topo.neighbors.assign(n_cells, {});
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> by_mid;
  for (int c = 0; c < n_cells; ++c) {
    for (int nu = 0; nu < 3; ++nu) {
      const auto [a, b] = reference::kEdgeVertices[nu];
      Eigen::Vector2i m = lattice[c][a] + lattice[c][b];
      if (periodic) {
        m.x() = ((m.x() % (2 * nx)) + 2 * nx) % (2 * nx);
        m.y() = ((m.y() % (2 * ny)) + 2 * ny) % (2 * ny);
      }
      by_mid[{m.x(), m.y()}].push_back({c, nu});
    }
  }
  for (const auto& [key, list] : by_mid) {
    if (list.size() == 1) {
      const auto [c, nu] = list[0];
      if (periodic) throw Error("build_criss_mesh: unmatched periodic edge");
      topo.faces.push_back({c, nu, -1, -1, Vector2::Zero()});
      continue;
    }
    if (list.size() != 2) throw Error("build_criss_mesh: non-manifold edge");
    const auto [c, nu] = list[0];
    const auto [d, mu] = list[1];
    // The start of c's edge coincides with the end of d's edge.
    const Eigen::Vector2i la = lattice[c][reference::kEdgeVertices[nu][0]];
    const Eigen::Vector2i lb = lattice[d][reference::kEdgeVertices[mu][1]];
    const Vector2 shift((lb - la).x() * hx, (lb - la).y() * hy);
    topo.neighbors[c][nu] = {d, mu, shift};
    topo.neighbors[d][mu] = {c, nu, -shift};
    topo.faces.push_back({c, nu, d, mu, shift});
  }
  return mesh;
}

const Neighbor& neighbor(const MeshTopology& topo, int cell, int nu) {
  if (cell < 0 || cell >= topo.num_cells() || nu < 0 || nu > 2) {
    throw Error("neighbor: invalid cell/edge index");
  }
  return topo.neighbors[cell][nu];
}

std::array<Vector2, 3> cell_vertices(const MeshTopology& topo,
                                     const std::vector<Vector2>& positions,
                                     int cell) {
  const auto& ids = topo.cells[cell];
  const auto& off = topo.vertex_offsets[cell];
  return {positions[ids[0]] + off[0], positions[ids[1]] + off[1],
          positions[ids[2]] + off[2]};
}

MeshMotion MeshMotion::fixed(std::vector<Vector2> coords) {
  MeshMotion m;
  m.kind_ = MotionKind::Static;
  m.initial_ = std::move(coords);
  return m;
}

MeshMotion MeshMotion::sinusoidal(std::vector<Vector2> coords, const Box& box,
                                  double t0) {
  if (!(t0 > 0)) throw Error("MeshMotion: period must be positive");
  MeshMotion m;
  m.kind_ = MotionKind::Sinusoidal;
  m.initial_ = std::move(coords);
  m.box_ = box;
  m.t0_ = t0;
  return m;
}

MeshMotion MeshMotion::two_mesh(std::vector<Vector2> coords,
                                std::vector<Vector2> target, double T) {
  if (coords.size() != target.size()) {
    throw Error("MeshMotion: initial and target meshes differ in size");
  }
  if (!(T > 0)) throw Error("MeshMotion: final time must be positive");
  MeshMotion m;
  m.kind_ = MotionKind::TwoMeshInterp;
  m.initial_ = std::move(coords);
  m.target_ = std::move(target);
  m.T_ = T;
  return m;
}

Vector2 MeshMotion::vertex_position(int vid, double t) const {
  if (vid < 0 || vid >= num_vertices()) {
    throw Error("vertex_position: vertex id " + std::to_string(vid) +
                " out of range");
  }
  if (t < 0.0 || (kind_ == MotionKind::TwoMeshInterp && t > T_ * (1 + 1e-12))) {
    std::ostringstream msg;
    msg << "vertex_position: time " << t << " outside the motion interval";
    throw Error(msg.str());
  }
  const Vector2& x0 = initial_[vid];
  switch (kind_) {
    case MotionKind::Static:
      return x0;
    case MotionKind::Sinusoidal: {
      const double space = sin_2pi((x0.x() - box_.x_l) / box_.width()) *
                           sin_2pi((x0.y() - box_.y_l) / box_.height());
      return x0 + Vector2(0.3 * space * sin_2pi(t / t0_),
                          0.2 * space * sin_2pi(2.0 * t / t0_));
    }
    case MotionKind::TwoMeshInterp:
      return lerp(x0, target_[vid], std::min(t / T_, 1.0));
  }
  return x0;
}

std::vector<Vector2> MeshMotion::positions(double t) const {
  std::vector<Vector2> p(initial_.size());
  for (int v = 0; v < num_vertices(); ++v) p[v] = vertex_position(v, t);
  return p;
}

StepMotion StepMotion::sample(const MeshMotion& motion, double t_n, double dt) {
  StepMotion s;
  s.t_n = t_n;
  s.dt = dt;
  s.start = motion.positions(t_n);
  s.end = motion.positions(t_n + dt);
  return s;
}

std::vector<Vector2> StepMotion::positions(double t) const {
  const double theta = dt > 0 ? (t - t_n) / dt : 0.0;
  std::vector<Vector2> p(start.size());
  for (std::size_t v = 0; v < start.size(); ++v) {
    p[v] = lerp(start[v], end[v], theta);
  }
  return p;
}

Vector2 StepMotion::velocity(int vid) const {
  if (!(dt > 0)) return Vector2::Zero();
  return (end[vid] - start[vid]) / dt;
}

double signed_area(const std::array<Vector2, 3>& v) {
  const Vector2 a = v[1] - v[0], b = v[2] - v[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Vector2 edge_length_normal(const std::array<Vector2, 3>& v, int nu) {
  const auto [a, b] = reference::kEdgeVertices[nu];
  const Vector2 d = v[b] - v[a];
  return {d.y(), -d.x()};
}

CellGeometry cell_geometry(const std::array<Vector2, 3>& v,
                           const std::array<Vector2, 3>& v_dot) {
  CellGeometry g;
  g.v1 = v[0];
  g.v1_dot = v_dot[0];
  g.A.col(0) = v[1] - v[0];
  g.A.col(1) = v[2] - v[0];
  g.A_dot.col(0) = v_dot[1] - v_dot[0];
  g.A_dot.col(1) = v_dot[2] - v_dot[0];
  g.J = g.A.determinant();
  if (!(g.J > 0)) {
    std::ostringstream msg;
    msg << "inverted cell (J = " << g.J << ")";
    throw Error(msg.str());
  }
  g.A_inv = g.A.inverse();
  // J A^{-T} is the cofactor matrix of A.
  Matrix2 cof;
  cof << g.A(1, 1), -g.A(1, 0), -g.A(0, 1), g.A(0, 0);
  for (int nu = 0; nu < 3; ++nu) {
    g.scaled_normals[nu] = cof * reference::edge_normal(nu);
  }
  g.gcl_div = (g.A_inv * g.A_dot).trace();
  return g;
}

CellGeometry cell_geometry(const MeshTopology& topo, const StepMotion& step,
                           int cell, double t) {
  if (cell < 0 || cell >= topo.num_cells()) {
    throw Error("cell_geometry: invalid cell " + std::to_string(cell));
  }
  const double theta = step.dt > 0 ? (t - step.t_n) / step.dt : 0.0;
  if (theta < -1e-12 || theta > 1 + 1e-12) {
    throw Error("cell_geometry: time outside the step");
  }
  const auto& ids = topo.cells[cell];
  const auto& off = topo.vertex_offsets[cell];
  std::array<Vector2, 3> v, v_dot;
  for (int l = 0; l < 3; ++l) {
    v[l] = lerp(step.start[ids[l]], step.end[ids[l]], theta) + off[l];
    v_dot[l] = step.velocity(ids[l]);
  }
  try {
    return cell_geometry(v, v_dot);
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << e.what() << " at cell " << cell << ", t = " << t;
    throw Error(msg.str());
  }
}

std::vector<CellGeometry> mesh_geometry(const MeshTopology& topo,
                                        const StepMotion& step, double t) {
  std::vector<CellGeometry> geo(topo.num_cells());
  parallel_for(topo.num_cells(),
               [&](int c) { geo[c] = cell_geometry(topo, step, c, t); });
  return geo;
}

std::vector<CellGeometry> mesh_geometry(const MeshTopology& topo,
                                        const std::vector<Vector2>& positions) {
  StepMotion frozen;
  frozen.start = positions;
  frozen.end = positions;
  return mesh_geometry(topo, frozen, 0.0);
}

void write_vtk(std::ostream& os, const MeshTopology& topo,
               const std::vector<Vector2>& positions,
               const std::vector<VtkField>& fields, const std::string& title) {
  const int n = topo.num_cells();
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n"
     << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << 3 * n << " double\n";
  os.precision(17);
  for (int c = 0; c < n; ++c) {
    for (const Vector2& p : cell_vertices(topo, positions, c)) {
      os << p.x() << ' ' << p.y() << " 0\n";
    }
  }
  os << "CELLS " << n << ' ' << 4 * n << '\n';
  for (int c = 0; c < n; ++c) {
    os << "3 " << 3 * c << ' ' << 3 * c + 1 << ' ' << 3 * c + 2 << '\n';
  }
  os << "CELL_TYPES " << n << '\n';
  for (int c = 0; c < n; ++c) os << "5\n";

  auto emit = [&](bool per_cell, const char* header, std::size_t count) {
    bool first = true;
    for (const auto& f : fields) {
      if (f.per_cell != per_cell) continue;
      if (f.values.size() != count) {
        throw Error("write_vtk: field '" + f.name + "' has wrong length");
      }
      if (first) os << header << ' ' << count << '\n';
      first = false;
      os << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
      for (double x : f.values) os << x << '\n';
    }
  };
  emit(true, "CELL_DATA", static_cast<std::size_t>(n));
  emit(false, "POINT_DATA", static_cast<std::size_t>(3 * n));
}

void write_vtk(const std::string& path, const MeshTopology& topo,
               const std::vector<Vector2>& positions,
               const std::vector<VtkField>& fields, const std::string& title) {
  std::ofstream os(path);
  if (!os) throw Error("write_vtk: cannot open " + path);
  write_vtk(os, topo, positions, fields, title);
  if (!os) throw Error("write_vtk: write failed for " + path);
}

}  // namespace aledg
