// Time-dependent triangular meshes: static topology, vertex motion and the
// per-cell affine maps x = A(t) xi + v1(t).
#ifndef ALEDG_MESH_HPP_
#define ALEDG_MESH_HPP_

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aledg/quadrature.hpp"

namespace aledg {

struct Box {
  double x_l = 0.0, x_r = 1.0, y_l = 0.0, y_r = 1.0;
  double width() const { return x_r - x_l; }
  double height() const { return y_r - y_l; }
};

enum class BoundaryKind { Periodic, Dirichlet };

/// Which diagonal splits each square of the criss mesh.
enum class Diagonal { LowerLeftUpperRight, LowerRightUpperLeft };

/// Adjacency across a local edge. `shift` maps a point on this cell's edge to
/// the coincident point in the neighbor's frame (nonzero across periodic
/// wraps).
struct Neighbor {
  int cell = -1;
  int edge = -1;
  Vector2 shift = Vector2::Zero();
  bool is_boundary() const { return cell < 0; }
};

/// One geometric edge. For boundary faces `other_cell` is -1.
struct Face {
  int cell = -1, edge = -1;
  int other_cell = -1, other_edge = -1;
  Vector2 shift = Vector2::Zero();
  bool is_boundary() const { return other_cell < 0; }
};

struct MeshTopology {
  int num_vertices = 0;
  std::vector<std::array<int, 3>> cells;
  // Offset added to a vertex position to place it in the cell's frame.
  std::vector<std::array<Vector2, 3>> vertex_offsets;
  std::vector<std::array<Neighbor, 3>> neighbors;
  std::vector<Face> faces;
  std::vector<bool> boundary_vertex;
  Box box;
  BoundaryKind bc = BoundaryKind::Periodic;
  double h0 = 0.0;

  int num_cells() const { return static_cast<int>(cells.size()); }
};

struct Mesh {
  MeshTopology topology;
  std::vector<Vector2> coords;
};

/// Squares of side h0, each split into two positively oriented triangles.
Mesh build_criss_mesh(const Box& box, double h0, BoundaryKind bc,
                      Diagonal diagonal = Diagonal::LowerRightUpperLeft);

const Neighbor& neighbor(const MeshTopology& topo, int cell, int nu);

/// The three vertices of `cell` in its own frame.
std::array<Vector2, 3> cell_vertices(const MeshTopology& topo,
                                     const std::vector<Vector2>& positions,
                                     int cell);

enum class MotionKind { Static, Sinusoidal, TwoMeshInterp };

class MeshMotion {
 public:
  static MeshMotion fixed(std::vector<Vector2> coords);
  /// Periodic displacement with amplitudes 0.3 (x) and 0.2 (y) and period t0.
  static MeshMotion sinusoidal(std::vector<Vector2> coords, const Box& box,
                               double t0);
  /// Linear blend from `coords` at t = 0 to `target` at t = T.
  static MeshMotion two_mesh(std::vector<Vector2> coords,
                             std::vector<Vector2> target, double T);

  MotionKind kind() const { return kind_; }
  int num_vertices() const { return static_cast<int>(initial_.size()); }
  double period() const { return t0_; }
  double final_time() const { return T_; }
  const std::vector<Vector2>& initial() const { return initial_; }
  const std::vector<Vector2>& target() const { return target_; }

  Vector2 vertex_position(int vid, double t) const;
  std::vector<Vector2> positions(double t) const;

 private:
  MotionKind kind_ = MotionKind::Static;
  std::vector<Vector2> initial_;
  std::vector<Vector2> target_;
  Box box_;
  double t0_ = 0.0;
  double T_ = 0.0;
};

inline double default_sinusoid_period() { return std::sqrt(125.0); }

/// Vertex positions at both ends of a time step; inside the step every
/// vertex moves on a straight line.
struct StepMotion {
  double t_n = 0.0;
  double dt = 0.0;
  std::vector<Vector2> start;
  std::vector<Vector2> end;

  static StepMotion sample(const MeshMotion& motion, double t_n, double dt);

  std::vector<Vector2> positions(double t) const;
  Vector2 velocity(int vid) const;
};

struct CellGeometry {
  Matrix2 A;
  Matrix2 A_inv;
  double J = 0.0;
  Vector2 v1;
  Matrix2 A_dot;
  Vector2 v1_dot;
  std::array<Vector2, 3> scaled_normals;  // J A^{-T} n_ref
  double gcl_div = 0.0;                   // tr(A^{-1} A_dot)

  Matrix2 adjugate() const { return J * A_inv; }
};

/// Geometry of `cell` at time t inside the step described by `step`.
CellGeometry cell_geometry(const MeshTopology& topo, const StepMotion& step,
                           int cell, double t);
/// Geometry from explicit vertex positions and velocities.
CellGeometry cell_geometry(const std::array<Vector2, 3>& v,
                           const std::array<Vector2, 3>& v_dot);

/// Geometry of every cell at time t inside `step` (computed in parallel).
std::vector<CellGeometry> mesh_geometry(const MeshTopology& topo,
                                        const StepMotion& step, double t);
/// Geometry of a frozen mesh (zero grid velocity).
std::vector<CellGeometry> mesh_geometry(const MeshTopology& topo,
                                        const std::vector<Vector2>& positions);

inline Vector2 map_to_physical(const CellGeometry& g, const Vector2& xi) {
  return g.A * xi + g.v1;
}
inline Vector2 map_to_reference(const CellGeometry& g, const Vector2& x) {
  return g.A_inv * (x - g.v1);
}
inline Vector2 grid_velocity(const CellGeometry& g, const Vector2& xi) {
  return g.A_dot * xi + g.v1_dot;
}
inline const Vector2& scaled_edge_normal(const CellGeometry& g, int nu) {
  return g.scaled_normals[nu];
}

/// Outward normal of edge `nu` scaled by the physical edge length.
Vector2 edge_length_normal(const std::array<Vector2, 3>& v, int nu);

double signed_area(const std::array<Vector2, 3>& v);

struct VtkField {
  std::string name;
  std::vector<double> values;
  bool per_cell = false;
};

/// Legacy ASCII unstructured grid, three points per cell so that
/// discontinuous fields can be attached as point data.
void write_vtk(std::ostream& os, const MeshTopology& topo,
               const std::vector<Vector2>& positions,
               const std::vector<VtkField>& fields = {},
               const std::string& title = "aledg mesh");
void write_vtk(const std::string& path, const MeshTopology& topo,
               const std::vector<Vector2>& positions,
               const std::vector<VtkField>& fields = {},
               const std::string& title = "aledg mesh");

}  // namespace aledg

#endif  // ALEDG_MESH_HPP_
