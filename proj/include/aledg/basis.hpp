// L2(K_ref)-orthonormal polynomial basis of total degree <= k on the
// reference triangle.
#ifndef ALEDG_BASIS_HPP_
#define ALEDG_BASIS_HPP_

#include <vector>

#include <Eigen/Dense>

#include "aledg/quadrature.hpp"

namespace aledg {

inline constexpr int basis_dimension(int k) { return (k + 1) * (k + 2) / 2; }

/// Values and reference gradients of all basis functions at a point list.
/// Rows are points, columns are basis functions.
struct BasisTable {
  Eigen::MatrixXd phi;
  Eigen::MatrixXd dphi_dxi1;
  Eigen::MatrixXd dphi_dxi2;
  int num_points() const { return static_cast<int>(phi.rows()); }
};

class Basis {
 public:
  explicit Basis(int k);

  int degree() const { return k_; }
  int size() const { return r_; }

  Eigen::VectorXd values(const Vector2& xi) const;
  /// r x 2, row i is grad_xi phi_i.
  Eigen::MatrixX2d gradients(const Vector2& xi) const;

  BasisTable tabulate(const std::vector<Vector2>& points) const;

  /// Exponents (a, b) of (xi1 - 1/3)^a (xi2 - 1/3)^b in basis ordering.
  const std::vector<std::array<int, 2>>& exponents() const { return exps_; }
  /// phi = coefficients() * monomials.
  const Eigen::MatrixXd& coefficients() const { return coef_; }

 private:
  Eigen::VectorXd monomials(const Vector2& xi) const;

  int k_;
  int r_;
  std::vector<std::array<int, 2>> exps_;
  Eigen::MatrixXd coef_;
};

}  // namespace aledg

#endif  // ALEDG_BASIS_HPP_
