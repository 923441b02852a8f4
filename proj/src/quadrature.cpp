#include "aledg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aledg/error.hpp"

namespace aledg {

namespace {

// Recurrence coefficients of the monic orthogonal polynomials of a discrete
// measure (Stieltjes procedure), then Golub-Welsch.
LineRule golub_welsch(int n, const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  Eigen::VectorXd a(n), b(n);
  Eigen::VectorXd p_prev = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd p = Eigen::VectorXd::Ones(x.size());
  double norm_prev = 1.0;
  for (int k = 0; k < n; ++k) {
    const double norm = (w.array() * p.array().square()).sum();
    a(k) = (w.array() * x.array() * p.array().square()).sum() / norm;
    b(k) = k == 0 ? norm : norm / norm_prev;
    Eigen::VectorXd p_next =
        ((x.array() - a(k)) * p.array() - (k == 0 ? 0.0 : b(k)) * p_prev.array())
            .matrix();
    p_prev = p;
    p = p_next;
    norm_prev = norm;
  }
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = a(k);
    if (k + 1 < n) {
      jacobi(k, k + 1) = jacobi(k + 1, k) = std::sqrt(b(k + 1));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  LineRule rule;
  rule.points = eig.eigenvalues();
  rule.weights = b(0) * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

// Legendre nodes on [-1, 1] from the closed-form recurrence.
LineRule legendre_pm1(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k - 1, k) = jacobi(k, k - 1) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  LineRule rule;
  rule.points = eig.eigenvalues();
  rule.weights = 2.0 * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

// Force exact mirror symmetry about `center`, so that reversed traversal of
// an edge hits the same abscissae bit-for-bit.
void symmetrize(LineRule& rule, double center) {
  const int n = rule.size();
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double d = 0.5 * ((center - rule.points(i)) + (rule.points(j) - center));
    const double w = 0.5 * (rule.weights(i) + rule.weights(j));
    rule.points(i) = center - d;
    rule.points(j) = center + d;
    rule.weights(i) = rule.weights(j) = w;
  }
  if (n % 2 == 1) rule.points(n / 2) = center;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Eigen::Vector3d barycentric(const Vector2& xi) {
  return {1.0 - xi.x() - xi.y(), xi.x(), xi.y()};
}

}  // namespace

LineRule gauss_rule_01(int n, const std::function<double(double)>& w,
                       int weight_degree) {
  if (n < 1) throw Error("gauss_rule_01: need at least one point");
  // Legendre discretization exact for degree 2n + weight_degree.
  const int m = n + weight_degree / 2 + 2;
  const LineRule base = legendre_pm1(m);
  Eigen::VectorXd x = 0.5 * (base.points.array() + 1.0);
  Eigen::VectorXd wx(m);
  for (int i = 0; i < m; ++i) wx(i) = 0.5 * base.weights(i) * w(x(i));
  return golub_welsch(n, x, wx);
}

LineRule gauss_legendre_01(int n) {
  LineRule r = legendre_pm1(n);
  r.points = 0.5 * (r.points.array() + 1.0);
  r.weights *= 0.5;
  symmetrize(r, 0.5);
  return r;
}

LineRule gauss_lobatto_01(int n) {
  if (n < 2) throw Error("gauss_lobatto_01: need at least two points");
  LineRule r;
  r.points.resize(n);
  r.points(0) = 0.0;
  r.points(n - 1) = 1.0;
  if (n > 2) {
    const LineRule inner =
        gauss_rule_01(n - 2, [](double s) { return s * (1.0 - s); }, 2);
    r.points.segment(1, n - 2) = inner.points;
  }
  // Weights from the moment system, exact up to degree n - 1.
  Eigen::MatrixXd vander(n, n);
  Eigen::VectorXd moments(n);
  for (int p = 0; p < n; ++p) {
    for (int i = 0; i < n; ++i) vander(p, i) = std::pow(r.points(i), p);
    moments(p) = 1.0 / (p + 1);
  }
  r.weights = vander.colPivHouseholderQr().solve(moments);
  symmetrize(r, 0.5);
  return r;
}

EdgeRule edge_gauss(int k) {
  if (k < 1 || k > 3) {
    throw Error("edge_gauss: unsupported degree k = " + std::to_string(k));
  }
  const LineRule g = gauss_legendre_01(k + 1);
  EdgeRule rule;
  rule.degree = k;
  rule.points = g.points.array() - 0.5;
  // re-mirror on the centered interval so x_{k-β} == -x_β exactly
  for (int i = 0; i < (k + 1) / 2; ++i) rule.points(k - i) = -rule.points(i);
  if (k % 2 == 0) rule.points(k / 2) = 0.0;
  rule.weights = g.weights;
  return rule;
}

VolumeRule volume_rule(int degree) {
  if (degree < 0 || degree > kMaxVolumeDegree) {
    throw Error("volume_rule: unsupported degree " + std::to_string(degree));
  }
  // Collapsed-coordinate product rule: ξ = (r(1-s), s), dξ = (1-s) dr ds.
  const int n = std::max(1, (degree + 2) / 2);
  const LineRule gr = gauss_legendre_01(n);
  const LineRule gs = gauss_rule_01(n, [](double s) { return 1.0 - s; }, 1);
  VolumeRule rule;
  rule.degree = degree;
  rule.weights.resize(n * n);
  rule.points.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double s = gs.points(j);
      rule.points.emplace_back(gr.points(i) * (1.0 - s), s);
      rule.weights(j * n + i) = gr.weights(i) * gs.weights(j);
    }
  }
  return rule;
}

double monomial_integral(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

std::vector<Vector2> ZXSRule::all_points() const {
  std::vector<Vector2> pts;
  for (const auto& e : edge_points) pts.insert(pts.end(), e.begin(), e.end());
  pts.insert(pts.end(), interior_points.begin(), interior_points.end());
  return pts;
}

Eigen::VectorXd ZXSRule::all_weights() const {
  const int ne = static_cast<int>(edge_weights.size());
  Eigen::VectorXd w(size());
  for (int nu = 0; nu < 3; ++nu) w.segment(nu * ne, ne) = edge_weights;
  w.tail(interior_size()) = interior_weights;
  return w;
}

ZXSRule zxs_rule(int k) {
  if (k < 1 || k > 3) {
    throw Error("zxs_rule: unsupported degree k = " + std::to_string(k));
  }
  ZXSRule rule;
  rule.degree = k;
  rule.N = 2;
  while (2 * rule.N - 3 < k) ++rule.N;
  const int N = rule.N;
  const double sigma_tilde = 1.0 / (N * (N - 1));
  rule.sigma_hat = 2.0 / 3.0 * sigma_tilde;

  const EdgeRule edge = edge_gauss(k);
  rule.edge_weights = edge.weights * rule.sigma_hat;
  for (int nu = 0; nu < 3; ++nu) {
    for (int b = 0; b <= k; ++b) {
      rule.edge_points[nu].push_back(
          reference::edge_point(nu, 0.5 + edge.points(b)));
    }
  }

  // Interior point on the segment from edge point (nu, b) towards the
  // opposite vertex, at collapsed coordinate s.
  auto interior = [&](int nu, int b, double s) -> Vector2 {
    return (1.0 - s) * rule.edge_points[nu][b] + s * reference::vertices()[nu];
  };

  if (k <= 2) {
    const LineRule lob = gauss_lobatto_01(N);
    for (int i = 1; i + 1 < N; ++i) {
      const double s = lob.points(i);
      for (int nu = 0; nu < 3; ++nu) {
        for (int b = 0; b <= k; ++b) {
          rule.interior_points.push_back(interior(nu, b, s));
        }
      }
    }
    rule.interior_weights.resize(rule.interior_points.size());
    int q = 0;
    for (int i = 1; i + 1 < N; ++i) {
      const double s = lob.points(i);
      for (int nu = 0; nu < 3; ++nu) {
        for (int b = 0; b <= k; ++b) {
          rule.interior_weights(q++) =
              2.0 / 3.0 * edge.weights(b) * lob.weights(i) * (1.0 - s);
        }
      }
    }
    return rule;
  }

  // k = 3, N = 3: one interior level per edge, two S3 orbits (outer and inner
  // Gauss abscissae). The level s and the two orbit weights are fixed by the
  // S3-invariant moments 1, e2, e3 of the barycentric coordinates, which is
  // equivalent to exactness on P^3 for a symmetric rule.
  const std::array<double, 3> target{1.0, 0.25, 1.0 / 60.0};
  auto invariants = [](const Vector2& xi) {
    const Eigen::Vector3d l = barycentric(xi);
    return Eigen::Vector3d(1.0, l(0) * l(1) + l(1) * l(2) + l(2) * l(0),
                           l(0) * l(1) * l(2));
  };
  Eigen::Vector3d edge_part = Eigen::Vector3d::Zero();
  for (int nu = 0; nu < 3; ++nu) {
    for (int b = 0; b <= k; ++b) {
      edge_part += rule.edge_weights(b) * invariants(rule.edge_points[nu][b]);
    }
  }
  auto solve_level = [&](double s, Eigen::Vector2d& orbit_weights) {
    Eigen::Matrix<double, 3, 2> m = Eigen::Matrix<double, 3, 2>::Zero();
    for (int nu = 0; nu < 3; ++nu) {
      for (int b = 0; b <= k; ++b) {
        const int orbit = (b == 0 || b == k) ? 0 : 1;
        m.col(orbit) += invariants(interior(nu, b, s));
      }
    }
    const Eigen::Vector3d rhs =
        Eigen::Vector3d(target[0], target[1], target[2]) - edge_part;
    orbit_weights = m.topRows<2>().partialPivLu().solve(rhs.head<2>());
    return m.row(2).dot(orbit_weights) - rhs(2);
  };
  // The positive-weight root lies in (0.2, 0.3); the other roots of the
  // cubic-moment residual give a negative orbit weight.
  double lo = 0.2, hi = 0.3;
  Eigen::Vector2d wts;
  double f_lo = solve_level(lo, wts);
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = solve_level(mid, wts);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  solve_level(s, wts);
  for (int nu = 0; nu < 3; ++nu) {
    for (int b = 0; b <= k; ++b) {
      rule.interior_points.push_back(interior(nu, b, s));
    }
  }
  rule.interior_weights.resize(rule.interior_points.size());
  for (int q = 0; q < rule.interior_size(); ++q) {
    const int b = q % (k + 1);
    rule.interior_weights(q) = wts((b == 0 || b == k) ? 0 : 1);
  }
  return rule;
}

}  // namespace aledg
