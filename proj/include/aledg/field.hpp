// Modal DG fields and the immutable per-run discretization data (basis
// tables at every quadrature point set).
#ifndef ALEDG_FIELD_HPP_
#define ALEDG_FIELD_HPP_

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "aledg/basis.hpp"
#include "aledg/mesh.hpp"
#include "aledg/physics.hpp"
#include "aledg/quadrature.hpp"

namespace aledg {

/// Coefficients of all cells. Column block [c * n_vars, (c+1) * n_vars) holds
/// the r x n_vars coefficients of cell c.
struct DGField {
  int n_basis = 0;
  int n_vars = 0;
  int n_cells = 0;
  double t = 0.0;
  Eigen::MatrixXd coeffs;

  DGField() = default;
  DGField(int r, int nv, int nc)
      : n_basis(r), n_vars(nv), n_cells(nc),
        coeffs(Eigen::MatrixXd::Zero(r, nv * nc)) {}

  auto cell(int c) { return coeffs.middleCols(c * n_vars, n_vars); }
  auto cell(int c) const { return coeffs.middleCols(c * n_vars, n_vars); }
};

/// Face incident to a cell edge; `owner` is true when the flux stored on the
/// face is oriented outward from this cell.
struct FaceRef {
  int face = -1;
  bool owner = true;
};

class Discretization {
 public:
  Discretization(MeshTopology topology, FluxModel model, int k);

  const MeshTopology& topology() const { return topo_; }
  const FluxModel& model() const { return model_; }
  int degree() const { return k_; }
  int n_basis() const { return basis_.size(); }
  int n_vars() const { return model_.n_vars(); }
  int n_cells() const { return topo_.num_cells(); }

  const Basis& basis() const { return basis_; }
  const EdgeRule& edge_rule() const { return edge_; }
  const VolumeRule& volume_rule() const { return volume_; }
  const BasisTable& volume_table() const { return volume_table_; }
  const VolumeRule& error_rule() const { return error_rule_; }
  const BasisTable& error_table() const { return error_table_; }
  const ZXSRule& zxs() const { return zxs_; }
  const BasisTable& zxs_table() const { return zxs_table_; }

  /// Reference points of edge nu, ordered by Gauss abscissa.
  const std::vector<Vector2>& edge_points(int nu) const { return edge_points_[nu]; }
  const BasisTable& edge_table(int nu) const { return edge_tables_[nu]; }
  /// r x (k+1): phi_i(edge point beta) * sigma_beta.
  const Eigen::MatrixXd& weighted_edge_phi(int nu) const { return weighted_edge_phi_[nu]; }
  /// r x n_q: d phi_i / d xi_l (q) * w_q.
  const Eigen::MatrixXd& weighted_grad(int l) const { return weighted_grad_[l]; }

  const FaceRef& face_of(int cell, int nu) const { return face_of_[cell][nu]; }

  DGField make_field(double t = 0.0) const {
    DGField f(n_basis(), n_vars(), n_cells());
    f.t = t;
    return f;
  }

 private:
  MeshTopology topo_;
  FluxModel model_;
  int k_;
  Basis basis_;
  EdgeRule edge_;
  VolumeRule volume_;
  BasisTable volume_table_;
  VolumeRule error_rule_;
  BasisTable error_table_;
  ZXSRule zxs_;
  BasisTable zxs_table_;
  std::array<std::vector<Vector2>, 3> edge_points_;
  std::array<BasisTable, 3> edge_tables_;
  std::array<Eigen::MatrixXd, 3> weighted_edge_phi_;
  std::array<Eigen::MatrixXd, 2> weighted_grad_;
  std::vector<std::array<FaceRef, 3>> face_of_;
};

/// Value of the field in `cell` at reference point xi.
State evaluate(const Discretization& d, const DGField& u, int cell,
               const Vector2& xi);

}  // namespace aledg

#endif  // ALEDG_FIELD_HPP_
