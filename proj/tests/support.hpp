// Helpers shared by the unit tests.
#ifndef ALEDG_TESTS_SUPPORT_HPP_
#define ALEDG_TESTS_SUPPORT_HPP_

#include <functional>
#include <vector>

#include "aledg/field.hpp"
#include "aledg/mesh.hpp"

namespace aledg::testing {

// L2 projection of a scalar function, cell by cell.
inline DGField project(const Discretization& d, const std::vector<CellGeometry>& geo,
                       const std::function<double(const Vector2&)>& f) {
  DGField u = d.make_field();
  const VolumeRule& r = d.error_rule();
  const BasisTable& t = d.error_table();
  for (int c = 0; c < d.n_cells(); ++c) {
    for (int q = 0; q < r.size(); ++q) {
      const double v = f(map_to_physical(geo[c], r.points[q]));
      u.coeffs.col(c) += r.weights(q) * v * t.phi.row(q).transpose();
    }
  }
  return u;
}

}  // namespace aledg::testing

#endif  // ALEDG_TESTS_SUPPORT_HPP_
