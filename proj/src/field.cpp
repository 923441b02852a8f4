#include "aledg/field.hpp"

#include "aledg/error.hpp"

namespace aledg {

Discretization::Discretization(MeshTopology topology, FluxModel model, int k)
    : topo_(std::move(topology)),
      model_(model),
      k_(k),
      basis_(k),
      edge_(edge_gauss(k)),
      volume_(aledg::volume_rule(2 * k + 1)),
      error_rule_(aledg::volume_rule(2 * k + 2)),
      zxs_(zxs_rule(k)) {
  volume_table_ = basis_.tabulate(volume_.points);
  error_table_ = basis_.tabulate(error_rule_.points);
  zxs_table_ = basis_.tabulate(zxs_.all_points());
  for (int nu = 0; nu < 3; ++nu) {
    for (int b = 0; b <= k; ++b) {
      edge_points_[nu].push_back(
          reference::edge_point(nu, 0.5 + edge_.points(b)));
    }
    edge_tables_[nu] = basis_.tabulate(edge_points_[nu]);
    weighted_edge_phi_[nu] =
        edge_tables_[nu].phi.transpose() * edge_.weights.asDiagonal();
  }
  weighted_grad_[0] =
      volume_table_.dphi_dxi1.transpose() * volume_.weights.asDiagonal();
  weighted_grad_[1] =
      volume_table_.dphi_dxi2.transpose() * volume_.weights.asDiagonal();

  face_of_.assign(topo_.num_cells(), {});
  for (int f = 0; f < static_cast<int>(topo_.faces.size()); ++f) {
    const Face& face = topo_.faces[f];
    face_of_[face.cell][face.edge] = {f, true};
    if (!face.is_boundary()) face_of_[face.other_cell][face.other_edge] = {f, false};
  }
  for (const auto& row : face_of_) {
    for (const FaceRef& ref : row) {
      if (ref.face < 0) throw Error("Discretization: cell edge without a face");
    }
  }
}

State evaluate(const Discretization& d, const DGField& u, int cell,
               const Vector2& xi) {
  const Eigen::VectorXd phi = d.basis().values(xi);
  return (u.cell(cell).transpose() * phi);
}

}  // namespace aledg
