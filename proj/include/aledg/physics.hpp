// Flux models, the ALE flux g(w, u) = f(u) - w u, the Lax-Friedrichs flux
// and closed-form reference solutions.
#ifndef ALEDG_PHYSICS_HPP_
#define ALEDG_PHYSICS_HPP_

#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "aledg/error.hpp"
#include "aledg/quadrature.hpp"

namespace aledg {

template <typename Scalar>
using StateT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 4, 1>;
/// One column per spatial direction.
template <typename Scalar>
using FluxT = Eigen::Matrix<Scalar, Eigen::Dynamic, 2, 0, 4, 2>;

using State = StateT<double>;
using Flux = FluxT<double>;

enum class ModelKind { Advection, Burgers, Euler };

struct FluxModel {
  ModelKind kind = ModelKind::Advection;
  Vector2 velocity = Vector2(1.0, 1.0);  // advection only
  double gamma = 1.4;                    // Euler only

  static FluxModel advection(const Vector2& c) {
    return {ModelKind::Advection, c, 1.4};
  }
  static FluxModel burgers() { return {ModelKind::Burgers, Vector2(1, 1), 1.4}; }
  static FluxModel euler(double gamma = 1.4) {
    return {ModelKind::Euler, Vector2(0, 0), gamma};
  }

  int n_vars() const { return kind == ModelKind::Euler ? 4 : 1; }
  bool scalar() const { return kind != ModelKind::Euler; }
  std::string name() const;
};

/// Invariant region [lo, hi] of a scalar solution.
struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

template <typename Scalar>
Scalar euler_pressure(const FluxModel& model, const StateT<Scalar>& u) {
  const Scalar rho = u(0);
  const Scalar kinetic = Scalar(0.5) * (u(1) * u(1) + u(2) * u(2)) / rho;
  return Scalar(model.gamma - 1.0) * (u(3) - kinetic);
}

template <typename Scalar>
void check_euler_state(const FluxModel& model, const StateT<Scalar>& u) {
  if (!(u(0) > Scalar(0))) throw Error("Euler state has nonpositive density");
  if (!(euler_pressure(model, u) > Scalar(0))) {
    throw Error("Euler state has nonpositive pressure");
  }
}

template <typename Scalar>
FluxT<Scalar> physical_flux(const FluxModel& model, const StateT<Scalar>& u) {
  FluxT<Scalar> f(u.size(), 2);
  switch (model.kind) {
    case ModelKind::Advection:
      f(0, 0) = Scalar(model.velocity.x()) * u(0);
      f(0, 1) = Scalar(model.velocity.y()) * u(0);
      break;
    case ModelKind::Burgers:
      f(0, 0) = f(0, 1) = Scalar(0.5) * u(0) * u(0);
      break;
    case ModelKind::Euler: {
      check_euler_state(model, u);
      const Scalar rho = u(0);
      const Scalar vx = u(1) / rho, vy = u(2) / rho;
      const Scalar p = euler_pressure(model, u);
      f(0, 0) = u(1);
      f(0, 1) = u(2);
      f(1, 0) = u(1) * vx + p;
      f(1, 1) = u(1) * vy;
      f(2, 0) = u(2) * vx;
      f(2, 1) = u(2) * vy + p;
      f(3, 0) = (u(3) + p) * vx;
      f(3, 1) = (u(3) + p) * vy;
      break;
    }
  }
  return f;
}

template <typename Scalar>
FluxT<Scalar> ale_flux(const FluxModel& model, const Vector2& omega,
                       const StateT<Scalar>& u) {
  FluxT<Scalar> g = physical_flux(model, u);
  g.col(0) -= Scalar(omega.x()) * u;
  g.col(1) -= Scalar(omega.y()) * u;
  return g;
}

/// Upper bound of |d g / d u . n| along the unit normal n. Scalar models take
/// the maximum over `bounds` when given and over [min, max] of the two
/// traces otherwise.
double wave_speed(const FluxModel& model, const State& u_int,
                  const State& u_ext, const Vector2& omega,
                  const Vector2& unit_n,
                  const std::optional<Bounds>& bounds = std::nullopt);

/// 1/2 (g(a) + g(b)) N + 1/2 lambda |N| (a - b) with N the scaled normal.
State lax_friedrichs(const FluxModel& model, const Vector2& omega,
                     const State& u_int, const State& u_ext,
                     const Vector2& scaled_n, double lambda);

enum class SolutionKind {
  AdvectedSine,
  BurgersSine,
  EulerPlaneWave,
  EulerVortex,
  Constant
};

struct ExactSolution {
  SolutionKind kind = SolutionKind::AdvectedSine;
  double constant = 1.0;
  Vector2 velocity = Vector2(1.0, 1.0);  // advection speed
  double gamma = 1.4;
  int n_vars = 1;  // for Constant: 1 or 4

  static ExactSolution advected_sine(const Vector2& c = Vector2(1, 1)) {
    ExactSolution s;
    s.kind = SolutionKind::AdvectedSine;
    s.velocity = c;
    return s;
  }
  static ExactSolution burgers_sine() {
    ExactSolution s;
    s.kind = SolutionKind::BurgersSine;
    return s;
  }
  static ExactSolution euler_plane_wave(double gamma = 1.4) {
    ExactSolution s;
    s.kind = SolutionKind::EulerPlaneWave;
    s.gamma = gamma;
    s.n_vars = 4;
    return s;
  }
  static ExactSolution euler_vortex(double gamma = 1.4) {
    ExactSolution s;
    s.kind = SolutionKind::EulerVortex;
    s.gamma = gamma;
    s.n_vars = 4;
    return s;
  }
  static ExactSolution constant_state(double c) {
    ExactSolution s;
    s.kind = SolutionKind::Constant;
    s.constant = c;
    return s;
  }

  /// Range of the initial datum (scalar cases).
  Bounds range() const;
  std::string name() const;
};

State exact_solution(const ExactSolution& sol, double x, double y, double t);

/// Vortex parameters, exposed for tests.
struct VortexParameters {
  double x0 = 5.0, y0 = 5.0;
  double epsilon = 0.3;
  double r0 = 1.5;
  double theta = std::atan(0.5);
};

/// Primitive (rho, u, v, p) to conserved (rho, rho u, rho v, E).
State conserved_from_primitive(double gamma, double rho, double u, double v,
                               double p);

}  // namespace aledg

#endif  // ALEDG_PHYSICS_HPP_
