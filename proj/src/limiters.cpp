#include "aledg/limiters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aledg/error.hpp"
#include "aledg/parallel.hpp"

namespace aledg {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kAverageTolerance = 1e-11;

double minmod(double a, double b) {
  if (a > 0 && b > 0) return std::min(a, b);
  if (a < 0 && b < 0) return std::max(a, b);
  return 0.0;
}

// Coefficients of psi_i = 1 - 2 lambda_i (one at the midpoint of edge i,
// zero at the other two) on the degree-one basis functions 1 and 2.
Eigen::Matrix<double, 3, 2> midpoint_basis_projection(const Discretization& d) {
  const VolumeRule& rule = d.error_rule();
  const BasisTable& table = d.error_table();
  Eigen::Matrix<double, 3, 2> p = Eigen::Matrix<double, 3, 2>::Zero();
  for (int q = 0; q < rule.size(); ++q) {
    const Vector2& xi = rule.points[q];
    const double lambda[3] = {1.0 - xi.x() - xi.y(), xi.x(), xi.y()};
    for (int i = 0; i < 3; ++i) {
      const double psi = 1.0 - 2.0 * lambda[i];
      for (int j = 0; j < 2; ++j) {
        p(i, j) += rule.weights(q) * psi * table.phi(q, j + 1);
      }
    }
  }
  return p;
}

}  // namespace

State cell_average(const Discretization& d, const Eigen::MatrixXd& coeffs,
                   int cell) {
  const int nv = d.n_vars();
  return kSqrt2 * coeffs.block(0, cell * nv, 1, nv).transpose();
}

State cell_average_from_points(const Discretization& d,
                               const Eigen::MatrixXd& coeffs, int cell) {
  const int nv = d.n_vars();
  const Eigen::MatrixXd values =
      d.zxs_table().phi * coeffs.middleCols(cell * nv, nv);
  return values.transpose() * d.zxs().all_weights();
}

double bound_preserving_limit(const Discretization& d, Eigen::MatrixXd& coeffs,
                              int cell, const Bounds& bounds) {
  if (!d.model().scalar()) {
    throw Error("bound-preserving limiter is only defined for scalar models");
  }
  auto c = coeffs.col(cell);
  const double mean = kSqrt2 * c(0);
  if (mean > bounds.hi + kAverageTolerance || mean < bounds.lo - kAverageTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "cell average " << mean << " of cell " << cell << " outside ["
        << bounds.lo << ", " << bounds.hi << "]; time step too large?";
    throw Error(msg.str());
  }
  const Eigen::VectorXd values = d.zxs_table().phi * c;
  const double top = values.maxCoeff();
  const double bottom = values.minCoeff();
  // A cell flat to roundoff needs no limiting; the basis constant and
  // sqrt(2) may differ in the last bit.
  const double flat = 1e-14 * std::max(1.0, std::abs(mean));
  double theta = 1.0;
  if (top > bounds.hi && top - mean > flat) {
    theta = std::min(theta, std::abs(bounds.hi - mean) / (top - mean));
  }
  if (bottom < bounds.lo && mean - bottom > flat) {
    theta = std::min(theta, std::abs(bounds.lo - mean) / (mean - bottom));
  }
  if (theta < 1.0) c.tail(c.size() - 1) *= theta;
  return theta;
}

int bound_preserving_limit(const Discretization& d, Eigen::MatrixXd& coeffs,
                           const Bounds& bounds) {
  std::vector<char> touched(d.n_cells(), 0);
  parallel_for(d.n_cells(), [&](int c) {
    touched[c] = bound_preserving_limit(d, coeffs, c, bounds) < 1.0;
  });
  return static_cast<int>(std::count(touched.begin(), touched.end(), 1));
}

int slope_limit(const Discretization& d, Eigen::MatrixXd& coeffs,
                const std::vector<CellGeometry>& geo, double tvb, double nu) {
  const MeshTopology& topo = d.topology();
  const int nv = d.n_vars();
  const int nc = d.n_cells();
  const Eigen::Matrix<double, 3, 2> psi = midpoint_basis_projection(d);
  const Vector2 centroid_ref(1.0 / 3.0, 1.0 / 3.0);
  // Degree-one basis values at the three reference edge midpoints.
  Eigen::Matrix<double, 3, 2> phi_mid;
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd v = d.basis().values(reference::edge_point(i, 0.5));
    phi_mid.row(i) << v(1), v(2);
  }

  const Eigen::MatrixXd old = coeffs;
  std::vector<char> limited(nc, 0);
  parallel_for(nc, [&](int c) {
    const Vector2 b0 = map_to_physical(geo[c], centroid_ref);
    std::array<Vector2, 3> mid, bn;
    std::array<int, 3> nb;
    double h = 0.0;
    for (int i = 0; i < 3; ++i) {
      mid[i] = map_to_physical(geo[c], reference::edge_point(i, 0.5));
      h = std::max(h, (geo[c].scaled_normals[i] * reference::edge_length(i)).norm());
      const Neighbor& n = topo.neighbors[c][i];
      if (n.is_boundary()) {
        nb[i] = c;
        bn[i] = 2.0 * mid[i] - b0;
      } else {
        nb[i] = n.cell;
        bn[i] = map_to_physical(geo[n.cell], centroid_ref) - n.shift;
      }
    }
    // Barycentric weights of each midpoint against pairs of neighbor centroids.
    std::array<std::array<double, 3>, 3> w{};
    for (int i = 0; i < 3; ++i) {
      bool found = false;
      for (int jj = 1; jj <= 2 && !found; ++jj) {
        const int j = (i + jj) % 3;
        Matrix2 m;
        m.col(0) = bn[i] - b0;
        m.col(1) = bn[j] - b0;
        if (std::abs(m.determinant()) < 1e-14 * m.squaredNorm()) continue;
        const Vector2 ab = m.partialPivLu().solve(mid[i] - b0);
        if (ab.x() >= -1e-13 && ab.y() >= -1e-13) {
          w[i][i] = std::max(ab.x(), 0.0);
          w[i][j] = std::max(ab.y(), 0.0);
          found = true;
        }
      }
      if (!found) {
        const Vector2 e = bn[i] - b0;
        w[i][i] = std::max(0.0, (mid[i] - b0).dot(e) / e.squaredNorm());
      }
    }
    for (int v = 0; v < nv; ++v) {
      const int col = c * nv + v;
      const double mean0 = old(0, col);
      std::array<double, 3> delta, limited_delta;
      bool changed = false;
      for (int i = 0; i < 3; ++i) {
        delta[i] = phi_mid(i, 0) * old(1, col) + phi_mid(i, 1) * old(2, col);
        double neighbor_diff = 0.0;
        for (int j = 0; j < 3; ++j) {
          if (w[i][j] == 0.0) continue;
          neighbor_diff += w[i][j] * kSqrt2 * (old(0, nb[j] * nv + v) - mean0);
        }
        if (std::abs(delta[i]) <= tvb * h * h) {
          limited_delta[i] = delta[i];
        } else {
          limited_delta[i] = minmod(delta[i], nu * neighbor_diff);
        }
        changed = changed || limited_delta[i] != delta[i];
      }
      if (!changed) continue;
      const double sum = limited_delta[0] + limited_delta[1] + limited_delta[2];
      if (sum != 0.0) {
        double pos = 0.0, neg = 0.0;
        for (double x : limited_delta) {
          pos += std::max(0.0, x);
          neg += std::max(0.0, -x);
        }
        const double theta_pos = pos > 0 ? std::min(1.0, neg / pos) : 0.0;
        const double theta_neg = neg > 0 ? std::min(1.0, pos / neg) : 0.0;
        for (double& x : limited_delta) {
          x = theta_pos * std::max(0.0, x) - theta_neg * std::max(0.0, -x);
        }
      }
      auto out = coeffs.col(col);
      out.tail(out.size() - 1).setZero();
      for (int i = 0; i < 3; ++i) {
        out(1) += limited_delta[i] * psi(i, 0);
        out(2) += limited_delta[i] * psi(i, 1);
      }
      limited[c] = 1;
    }
  });
  return static_cast<int>(std::count(limited.begin(), limited.end(), 1));
}

void apply_limiters(const Discretization& d, Eigen::MatrixXd& coeffs,
                    const std::vector<CellGeometry>& geo,
                    const LimiterConfig& config) {
  if (config.slope_enabled) slope_limit(d, coeffs, geo, config.tvb, config.nu);
  if (config.bp_enabled) bound_preserving_limit(d, coeffs, config.bounds);
}

}  // namespace aledg
