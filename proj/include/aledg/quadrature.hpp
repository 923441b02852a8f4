// Quadrature rules on the unit interval and on the reference triangle
// K_ref = conv{(0,0), (1,0), (0,1)}.
#ifndef ALEDG_QUADRATURE_HPP_
#define ALEDG_QUADRATURE_HPP_

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace aledg {

using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

/// Nodes and weights of a one-dimensional rule.
struct LineRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss rule for the weight `w` on [0, 1], built from a
/// discretized Stieltjes procedure and the eigen-decomposition of the
/// Jacobi matrix. `w` must be a polynomial of degree <= `weight_degree`.
LineRule gauss_rule_01(int n, const std::function<double(double)>& w,
                       int weight_degree);

/// Gauss-Legendre on [0, 1], weights summing to 1, nodes mirrored exactly.
LineRule gauss_legendre_01(int n);

/// Gauss-Lobatto on [0, 1] with n >= 2 points, weights summing to 1.
LineRule gauss_lobatto_01(int n);

/// (k+1)-point Gauss rule on [-1/2, 1/2], weights sum to 1.
struct EdgeRule {
  int degree = 0;                 // polynomial degree k it serves
  Eigen::VectorXd points;         // abscissae in [-1/2, 1/2]
  Eigen::VectorXd weights;        // σ_β
  int size() const { return static_cast<int>(points.size()); }
};

EdgeRule edge_gauss(int k);

/// Positive-weight rule on K_ref; weights integrate (sum to |K_ref| = 1/2).
struct VolumeRule {
  int degree = 0;
  std::vector<Vector2> points;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(points.size()); }
};

inline constexpr int kMaxVolumeDegree = 8;

VolumeRule volume_rule(int degree);

/// Reference triangle data. Edge ν is opposite vertex ν and is traversed
/// counter-clockwise: F1 = v2->v3, F2 = v3->v1, F3 = v1->v2 (0-based below).
namespace reference {

inline const std::array<Vector2, 3>& vertices() {
  static const std::array<Vector2, 3> v{Vector2(0, 0), Vector2(1, 0),
                                        Vector2(0, 1)};
  return v;
}

/// Local vertex indices (start, end) of edge `nu` in counter-clockwise order.
inline constexpr std::array<std::array<int, 2>, 3> kEdgeVertices{
    {{1, 2}, {2, 0}, {0, 1}}};

inline double edge_length(int nu) { return nu == 0 ? std::sqrt(2.0) : 1.0; }

inline Vector2 edge_normal(int nu) {
  switch (nu) {
    case 0: return Vector2(1.0, 1.0) / std::sqrt(2.0);
    case 1: return Vector2(-1.0, 0.0);
    default: return Vector2(0.0, -1.0);
  }
}

/// Point at parameter s in [0,1] along edge `nu` (s = 0 at its start vertex).
inline Vector2 edge_point(int nu, double s) {
  const auto& v = vertices();
  const auto [a, b] = kEdgeVertices[nu];
  return (1.0 - s) * v[a] + s * v[b];
}

inline constexpr double kArea = 0.5;

}  // namespace reference

/// Bound-preserving point set: edge Gauss points of every reference edge
/// plus L = 3(N-2)(k+1) interior points. Weights average (sum to 1).
struct ZXSRule {
  int degree = 0;
  int N = 0;
  double sigma_hat = 0.0;  // (2/3) / (N(N-1))
  // edge block, ordered [nu][beta]; weight σ_β σ̂
  std::array<std::vector<Vector2>, 3> edge_points;
  Eigen::VectorXd edge_weights;  // σ_β σ̂, indexed by beta
  std::vector<Vector2> interior_points;
  Eigen::VectorXd interior_weights;

  int interior_size() const {
    return static_cast<int>(interior_points.size());
  }
  int size() const {
    return 3 * static_cast<int>(edge_weights.size()) + interior_size();
  }
  /// All points, edges first then interior, with matching weights.
  std::vector<Vector2> all_points() const;
  Eigen::VectorXd all_weights() const;
};

ZXSRule zxs_rule(int k);

/// Closed-form ∫_{K_ref} ξ1^a ξ2^b = a! b! / (a+b+2)!.
double monomial_integral(int a, int b);

}  // namespace aledg

#endif  // ALEDG_QUADRATURE_HPP_
