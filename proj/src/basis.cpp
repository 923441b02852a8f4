#include "aledg/basis.hpp"

#include <cmath>
#include <string>

#include "aledg/error.hpp"

namespace aledg {

namespace {

constexpr double kCentroid = 1.0 / 3.0;

}  // namespace

Basis::Basis(int k) : k_(k), r_(basis_dimension(k)) {
  if (k < 0 || k > 3) {
    throw Error("Basis: unsupported degree k = " + std::to_string(k));
  }
  for (int deg = 0; deg <= k; ++deg) {
    for (int b = 0; b <= deg; ++b) exps_.push_back({deg - b, b});
  }
  // Monomials about the centroid keep the Gram matrix well conditioned; an
  // exact rule of degree 2k gives it without cancellation. Orthonormalize by
  // Cholesky so that phi = L^{-1} m. Gram-Schmidt in degree order gives the
  // same functions as for plain monomials.
  const VolumeRule rule = volume_rule(std::max(1, 2 * k));
  Eigen::MatrixXd m(rule.size(), r_);
  for (int q = 0; q < rule.size(); ++q) m.row(q) = monomials(rule.points[q]).transpose();
  const Eigen::MatrixXd gram = m.transpose() * rule.weights.asDiagonal() * m;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw Error("Basis: Gram matrix not SPD");
  Eigen::MatrixXd L = llt.matrixL();
  coef_ = L.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(r_, r_));
}

Eigen::VectorXd Basis::monomials(const Vector2& xi) const {
  Eigen::VectorXd m(r_);
  for (int i = 0; i < r_; ++i) {
    m(i) = std::pow(xi.x() - kCentroid, exps_[i][0]) *
           std::pow(xi.y() - kCentroid, exps_[i][1]);
  }
  return m;
}

Eigen::VectorXd Basis::values(const Vector2& xi) const {
  return coef_ * monomials(xi);
}

Eigen::MatrixX2d Basis::gradients(const Vector2& xi) const {
  Eigen::MatrixX2d dm(r_, 2);
  for (int i = 0; i < r_; ++i) {
    const auto [a, b] = exps_[i];
    const double x = xi.x() - kCentroid, y = xi.y() - kCentroid;
    dm(i, 0) = a == 0 ? 0.0 : a * std::pow(x, a - 1) * std::pow(y, b);
    dm(i, 1) = b == 0 ? 0.0 : b * std::pow(x, a) * std::pow(y, b - 1);
  }
  return coef_ * dm;
}

BasisTable Basis::tabulate(const std::vector<Vector2>& points) const {
  const int n = static_cast<int>(points.size());
  BasisTable t;
  t.phi.resize(n, r_);
  t.dphi_dxi1.resize(n, r_);
  t.dphi_dxi2.resize(n, r_);
  for (int q = 0; q < n; ++q) {
    t.phi.row(q) = values(points[q]).transpose();
    const Eigen::MatrixX2d g = gradients(points[q]);
    t.dphi_dxi1.row(q) = g.col(0).transpose();
    t.dphi_dxi2.row(q) = g.col(1).transpose();
  }
  return t;
}

}  // namespace aledg
