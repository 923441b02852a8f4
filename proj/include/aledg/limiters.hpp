// Bound-preserving scaling limiter and a barycentric minmod slope limiter.
#ifndef ALEDG_LIMITERS_HPP_
#define ALEDG_LIMITERS_HPP_

#include <vector>

#include <Eigen/Dense>

#include "aledg/field.hpp"

namespace aledg {

struct LimiterConfig {
  bool bp_enabled = false;
  Bounds bounds{0.5, 1.5};
  bool slope_enabled = false;
  double tvb = 0.0;  // TVB constant M; 0 gives plain minmod
  double nu = 1.5;
};

/// (1/|K|) (u_h, 1)_K = sqrt(2) c_1 per variable.
State cell_average(const Discretization& d, const Eigen::MatrixXd& coeffs,
                   int cell);
/// Same average from the bound-preserving point set and its weights.
State cell_average_from_points(const Discretization& d,
                               const Eigen::MatrixXd& coeffs, int cell);

/// Scales cell `cell` of a scalar field about its average so that all point
/// values lie in [bounds.lo, bounds.hi]. Returns the scaling factor used.
double bound_preserving_limit(const Discretization& d, Eigen::MatrixXd& coeffs,
                              int cell, const Bounds& bounds);
/// All cells. Returns the number of cells that were modified.
int bound_preserving_limit(const Discretization& d, Eigen::MatrixXd& coeffs,
                           const Bounds& bounds);

/// Minmod limiting of the linear part against neighbor averages. `geo` is
/// the geometry matching the coefficients. Returns the number of limited
/// cells.
int slope_limit(const Discretization& d, Eigen::MatrixXd& coeffs,
                const std::vector<CellGeometry>& geo, double tvb = 0.0,
                double nu = 1.5);

void apply_limiters(const Discretization& d, Eigen::MatrixXd& coeffs,
                    const std::vector<CellGeometry>& geo,
                    const LimiterConfig& config);

}  // namespace aledg

#endif  // ALEDG_LIMITERS_HPP_
