// Explicit Runge-Kutta schemes in Shu-Osher form:
//   u^(i) = sum_j alpha(i-1, j) u^(j) + dt beta(i-1, j) L(u^(j), t_n + gamma(j) dt)
#ifndef ALEDG_RK_HPP_
#define ALEDG_RK_HPP_

#include <string>

#include <Eigen/Dense>

namespace aledg {

enum class RKId { ForwardEuler, TVDRK2, TVDRK3, SSPRK54 };

struct RKScheme {
  RKId id = RKId::TVDRK3;
  std::string name;
  int stages = 0;
  int order = 0;
  Eigen::MatrixXd alpha;  // stages x stages, lower triangular incl. diagonal
  Eigen::MatrixXd beta;
  Eigen::VectorXd gamma;  // relative time of stage input j

  bool uses(int j) const { return (beta.col(j).array() != 0.0).any(); }
};

RKScheme rk_scheme(RKId id);
RKId parse_rk_id(const std::string& name);
std::string rk_name(RKId id);

/// Checks the structural conditions on the tables (nonnegative, rows of
/// alpha sum to one, alpha == 0 iff beta == 0, gamma in [0, 1]).
bool valid_shu_osher(const RKScheme& s, double tol = 1e-14);

}  // namespace aledg

#endif  // ALEDG_RK_HPP_
