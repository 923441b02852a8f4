#include "aledg/rk.hpp"

#include <cmath>

#include "aledg/error.hpp"

namespace aledg {

namespace {

// Stage times follow from the tables: c_i = sum_j alpha_ij c_j + beta_ij.
Eigen::VectorXd stage_times(const Eigen::MatrixXd& alpha,
                            const Eigen::MatrixXd& beta) {
  const int s = static_cast<int>(alpha.rows());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(s + 1);
  for (int i = 1; i <= s; ++i) {
    for (int j = 0; j < i; ++j) {
      c(i) += alpha(i - 1, j) * c(j) + beta(i - 1, j);
    }
  }
  return c.head(s);
}

}  // namespace

RKScheme rk_scheme(RKId id) {
  RKScheme s;
  s.id = id;
  s.name = rk_name(id);
  switch (id) {
    case RKId::ForwardEuler:
      s.stages = 1;
      s.order = 1;
      s.alpha = Eigen::MatrixXd::Ones(1, 1);
      s.beta = Eigen::MatrixXd::Ones(1, 1);
      break;
    case RKId::TVDRK2:
      s.stages = 2;
      s.order = 2;
      s.alpha.resize(2, 2);
      s.alpha << 1.0, 0.0,
                 0.5, 0.5;
      s.beta.resize(2, 2);
      s.beta << 1.0, 0.0,
                0.0, 0.5;
      break;
    case RKId::TVDRK3:
      s.stages = 3;
      s.order = 3;
      s.alpha.resize(3, 3);
      s.alpha << 1.0, 0.0, 0.0,
                 0.75, 0.25, 0.0,
                 1.0 / 3.0, 0.0, 2.0 / 3.0;
      s.beta.resize(3, 3);
      s.beta << 1.0, 0.0, 0.0,
                0.0, 0.25, 0.0,
                0.0, 0.0, 2.0 / 3.0;
      break;
    case RKId::SSPRK54:
      // Spiteri-Ruuth SSP(5,4)
      s.stages = 5;
      s.order = 4;
      s.alpha = Eigen::MatrixXd::Zero(5, 5);
      s.beta = Eigen::MatrixXd::Zero(5, 5);
      s.alpha(0, 0) = 1.0;
      s.beta(0, 0) = 0.391752226571890;
      s.alpha(1, 0) = 0.444370493651235;
      s.alpha(1, 1) = 0.555629506348765;
      s.beta(1, 1) = 0.368410593050371;
      s.alpha(2, 0) = 0.620101851488403;
      s.alpha(2, 2) = 0.379898148511597;
      s.beta(2, 2) = 0.251891774271694;
      s.alpha(3, 0) = 0.178079954393132;
      s.alpha(3, 3) = 0.821920045606868;
      s.beta(3, 3) = 0.544974750228521;
      s.alpha(4, 2) = 0.517231671970585;
      s.alpha(4, 3) = 0.096059710526147;
      s.beta(4, 3) = 0.063692468666290;
      s.alpha(4, 4) = 0.386708617503269;
      s.beta(4, 4) = 0.226007483236906;
      break;
  }
  s.gamma = stage_times(s.alpha, s.beta);
  return s;
}

RKId parse_rk_id(const std::string& name) {
  if (name == "euler_fwd") return RKId::ForwardEuler;
  if (name == "tvdrk2") return RKId::TVDRK2;
  if (name == "tvdrk3") return RKId::TVDRK3;
  if (name == "ssprk54") return RKId::SSPRK54;
  throw Error("unknown integrator '" + name +
              "' (expected euler_fwd, tvdrk2, tvdrk3 or ssprk54)");
}

std::string rk_name(RKId id) {
  switch (id) {
    case RKId::ForwardEuler: return "euler_fwd";
    case RKId::TVDRK2: return "tvdrk2";
    case RKId::TVDRK3: return "tvdrk3";
    case RKId::SSPRK54: return "ssprk54";
  }
  return "unknown";
}

bool valid_shu_osher(const RKScheme& s, double tol) {
  for (int i = 0; i < s.stages; ++i) {
    double row = 0.0;
    for (int j = 0; j <= i; ++j) {
      const double a = s.alpha(i, j), b = s.beta(i, j);
      if (a < 0 || b < 0) return false;
      if ((a == 0.0) != (b == 0.0) && b != 0.0) return false;
      row += a;
    }
    if (std::abs(row - 1.0) > tol) return false;
  }
  return (s.gamma.array() >= -tol).all() && (s.gamma.array() <= 1 + tol).all();
}

}  // namespace aledg
