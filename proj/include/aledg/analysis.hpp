// Error norms, convergence orders and solution monitors.
#ifndef ALEDG_ANALYSIS_HPP_
#define ALEDG_ANALYSIS_HPP_

#include <vector>

#include <Eigen/Dense>

#include "aledg/field.hpp"

namespace aledg {

/// L2 error per variable, measured with the degree 2k+2 rule on `geo`.
Eigen::VectorXd l2_errors(const Discretization& d, const DGField& u,
                          const std::vector<CellGeometry>& geo,
                          const ExactSolution& exact, double t);
/// First variable only (the density for Euler).
double l2_error(const Discretization& d, const DGField& u,
                const std::vector<CellGeometry>& geo, const ExactSolution& exact,
                double t);
/// Pressure error of an Euler field.
double pressure_l2_error(const Discretization& d, const DGField& u,
                         const std::vector<CellGeometry>& geo,
                         const ExactSolution& exact, double t);
/// Max pointwise error of the first variable over the error-rule points.
double linf_error(const Discretization& d, const DGField& u,
                  const std::vector<CellGeometry>& geo, const ExactSolution& exact,
                  double t);

/// log2(e_{i-1} / e_i); requires h0 to halve exactly from row to row.
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& h0s);

/// min(M - u) and min(u - m) over every bound-preserving point of every cell.
struct BoundsMargin {
  double upper = 0.0;
  double lower = 0.0;
};
BoundsMargin bounds_monitor(const Discretization& d, const Eigen::MatrixXd& coeffs,
                            const Bounds& bounds);

struct Deviation {
  double linf = 0.0;
  double l2 = 0.0;
};
/// Distance of every variable from the constant c; L-inf over the
/// bound-preserving and error-rule points.
Deviation constant_state_deviation(const Discretization& d, const DGField& u,
                                   const std::vector<CellGeometry>& geo, double c);

/// Integral of each variable over the mesh.
Eigen::VectorXd total_mass(const Discretization& d, const DGField& u,
                           const std::vector<CellGeometry>& geo);
/// L2 norm of all variables together.
double l2_norm(const Discretization& d, const DGField& u,
               const std::vector<CellGeometry>& geo);

bool has_non_finite(const DGField& u);
double max_abs_value(const Discretization& d, const DGField& u);

}  // namespace aledg

#endif  // ALEDG_ANALYSIS_HPP_
