#include "aledg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aledg/error.hpp"
#include "aledg/parallel.hpp"

namespace aledg {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Per-cell squared error integrals, one column per reported quantity.
// Summed serially afterwards so the result does not depend on threading.
template <typename PointError>
Eigen::MatrixXd cell_error_integrals(const Discretization& d, const DGField& u,
                                     const std::vector<CellGeometry>& geo,
                                     int n_out, const PointError& err) {
  const VolumeRule& rule = d.error_rule();
  const BasisTable& table = d.error_table();
  Eigen::MatrixXd out(d.n_cells(), n_out);
  parallel_for(d.n_cells(), [&](int c) {
    const Eigen::MatrixXd values = table.phi * u.cell(c);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n_out);
    for (int q = 0; q < rule.size(); ++q) {
      const Vector2 x = map_to_physical(geo[c], rule.points[q]);
      const State uh = values.row(q).transpose();
      acc += rule.weights(q) * err(uh, x).array().square().matrix();
    }
    out.row(c) = geo[c].J * acc.transpose();
  });
  return out;
}

double ordered_sum(const Eigen::VectorXd& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

Eigen::VectorXd l2_errors(const Discretization& d, const DGField& u,
                          const std::vector<CellGeometry>& geo,
                          const ExactSolution& exact, double t) {
  const Eigen::MatrixXd per_cell = cell_error_integrals(
      d, u, geo, d.n_vars(), [&](const State& uh, const Vector2& x) -> Eigen::VectorXd {
        return uh - exact_solution(exact, x.x(), x.y(), t);
      });
  Eigen::VectorXd out(d.n_vars());
  for (int v = 0; v < d.n_vars(); ++v) out(v) = std::sqrt(ordered_sum(per_cell.col(v)));
  return out;
}

double l2_error(const Discretization& d, const DGField& u,
                const std::vector<CellGeometry>& geo, const ExactSolution& exact,
                double t) {
  return l2_errors(d, u, geo, exact, t)(0);
}

double pressure_l2_error(const Discretization& d, const DGField& u,
                         const std::vector<CellGeometry>& geo,
                         const ExactSolution& exact, double t) {
  const FluxModel& model = d.model();
  if (model.kind != ModelKind::Euler) {
    throw Error("pressure error requested for a non-Euler model");
  }
  const Eigen::MatrixXd per_cell = cell_error_integrals(
      d, u, geo, 1, [&](const State& uh, const Vector2& x) -> Eigen::VectorXd {
        const State ue = exact_solution(exact, x.x(), x.y(), t);
        Eigen::VectorXd e(1);
        e(0) = euler_pressure(model, uh) - euler_pressure(model, ue);
        return e;
      });
  return std::sqrt(ordered_sum(per_cell.col(0)));
}

double linf_error(const Discretization& d, const DGField& u,
                  const std::vector<CellGeometry>& geo, const ExactSolution& exact,
                  double t) {
  const VolumeRule& rule = d.error_rule();
  const BasisTable& table = d.error_table();
  std::vector<double> worst(d.n_cells(), 0.0);
  parallel_for(d.n_cells(), [&](int c) {
    const Eigen::VectorXd values = table.phi * u.cell(c).col(0);
    for (int q = 0; q < rule.size(); ++q) {
      const Vector2 x = map_to_physical(geo[c], rule.points[q]);
      worst[c] = std::max(
          worst[c], std::abs(values(q) - exact_solution(exact, x.x(), x.y(), t)(0)));
    }
  });
  return *std::max_element(worst.begin(), worst.end());
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& h0s) {
  if (errors.size() != h0s.size()) {
    throw Error("convergence_rates: errors and h0 lists differ in length");
  }
  std::vector<double> rates;
  for (size_t i = 1; i < errors.size(); ++i) {
    const double ratio = h0s[i - 1] / h0s[i];
    if (std::abs(ratio - 2.0) > 1e-12) {
      std::ostringstream msg;
      msg << "convergence_rates: h0 must halve between rows, got " << h0s[i - 1]
          << " then " << h0s[i];
      throw Error(msg.str());
    }
    rates.push_back(std::log2(errors[i - 1] / errors[i]));
  }
  return rates;
}

BoundsMargin bounds_monitor(const Discretization& d, const Eigen::MatrixXd& coeffs,
                            const Bounds& bounds) {
  if (!d.model().scalar()) throw Error("bounds_monitor needs a scalar model");
  const Eigen::MatrixXd values = d.zxs_table().phi * coeffs;
  return {bounds.hi - values.maxCoeff(), values.minCoeff() - bounds.lo};
}

Deviation constant_state_deviation(const Discretization& d, const DGField& u,
                                   const std::vector<CellGeometry>& geo, double c) {
  Deviation dev;
  const Eigen::MatrixXd at_zxs = d.zxs_table().phi * u.coeffs;
  const Eigen::MatrixXd at_rule = d.error_table().phi * u.coeffs;
  dev.linf = std::max((at_zxs.array() - c).abs().maxCoeff(),
                      (at_rule.array() - c).abs().maxCoeff());
  const Eigen::MatrixXd per_cell = cell_error_integrals(
      d, u, geo, d.n_vars(), [&](const State& uh, const Vector2&) -> Eigen::VectorXd {
        return uh.array() - c;
      });
  double sum = 0.0;
  for (int v = 0; v < d.n_vars(); ++v) sum += ordered_sum(per_cell.col(v));
  dev.l2 = std::sqrt(sum);
  return dev;
}

Eigen::VectorXd total_mass(const Discretization& d, const DGField& u,
                           const std::vector<CellGeometry>& geo) {
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(d.n_vars());
  for (int c = 0; c < d.n_cells(); ++c) {
    mass += (geo[c].J / kSqrt2) * u.cell(c).row(0).transpose();
  }
  return mass;
}

double l2_norm(const Discretization& d, const DGField& u,
               const std::vector<CellGeometry>& geo) {
  double sum = 0.0;
  for (int c = 0; c < d.n_cells(); ++c) sum += geo[c].J * u.cell(c).squaredNorm();
  return std::sqrt(sum);
}

bool has_non_finite(const DGField& u) { return !u.coeffs.allFinite(); }

double max_abs_value(const Discretization& d, const DGField& u) {
  const Eigen::MatrixXd a = d.zxs_table().phi * u.coeffs;
  const Eigen::MatrixXd b = d.error_table().phi * u.coeffs;
  return std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
}

}  // namespace aledg
