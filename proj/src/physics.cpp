#include "aledg/physics.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace aledg {

std::string FluxModel::name() const {
  switch (kind) {
    case ModelKind::Advection: return "advection";
    case ModelKind::Burgers: return "burgers";
    case ModelKind::Euler: return "euler";
  }
  return "unknown";
}

double wave_speed(const FluxModel& model, const State& u_int,
                  const State& u_ext, const Vector2& omega,
                  const Vector2& unit_n, const std::optional<Bounds>& bounds) {
  const double wn = omega.dot(unit_n);
  switch (model.kind) {
    case ModelKind::Advection:
      return std::abs(model.velocity.dot(unit_n) - wn);
    case ModelKind::Burgers: {
      const double lo = bounds ? bounds->lo : std::min(u_int(0), u_ext(0));
      const double hi = bounds ? bounds->hi : std::max(u_int(0), u_ext(0));
      const double s = unit_n.x() + unit_n.y();
      return std::max(std::abs(lo * s - wn), std::abs(hi * s - wn));
    }
    case ModelKind::Euler: {
      auto speed = [&](const State& u) {
        check_euler_state(model, u);
        const double rho = u(0);
        const double un = (u(1) * unit_n.x() + u(2) * unit_n.y()) / rho;
        const double c = std::sqrt(model.gamma * euler_pressure(model, u) / rho);
        return std::abs(un - wn) + c;
      };
      return std::max(speed(u_int), speed(u_ext));
    }
  }
  return 0.0;
}

State lax_friedrichs(const FluxModel& model, const Vector2& omega,
                     const State& u_int, const State& u_ext,
                     const Vector2& scaled_n, double lambda) {
  const Flux sum = ale_flux(model, omega, u_int) + ale_flux(model, omega, u_ext);
  State out = 0.5 * (sum * scaled_n);
  out += 0.5 * lambda * scaled_n.norm() * (u_int - u_ext);
  return out;
}

Bounds ExactSolution::range() const {
  switch (kind) {
    case SolutionKind::AdvectedSine:
    case SolutionKind::BurgersSine:
      return {0.5, 1.5};
    case SolutionKind::Constant:
      return {constant, constant};
    default:
      throw Error("range: only defined for scalar solutions");
  }
}

std::string ExactSolution::name() const {
  switch (kind) {
    case SolutionKind::AdvectedSine: return "advected_sine";
    case SolutionKind::BurgersSine: return "burgers_sine";
    case SolutionKind::EulerPlaneWave: return "euler_plane_wave";
    case SolutionKind::EulerVortex: return "euler_vortex";
    case SolutionKind::Constant: return "constant";
  }
  return "unknown";
}

State conserved_from_primitive(double gamma, double rho, double u, double v,
                               double p) {
  State s(4);
  s << rho, rho * u, rho * v, p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v);
  return s;
}

namespace {

constexpr double kPi = std::numbers::pi;

double burgers_characteristic(double x, double y, double t) {
  auto u0 = [](double s) { return 1.0 + 0.5 * std::sin(kPi * s); };
  double u = u0(x + y);
  if (t == 0.0) return u;
  auto residual = [&](double w) { return w - u0(x + y - 2.0 * w * t); };
  double r = residual(u);
  for (int it = 0; it < 50; ++it) {
    if (std::abs(r) <= 1e-13) return u;
    const double dr = 1.0 + kPi * t * std::cos(kPi * (x + y - 2.0 * u * t));
    if (dr == 0.0) break;
    double step = r / dr;
    // damping: halve until the residual decreases
    double trial = u - step, r_trial = residual(trial);
    for (int h = 0; h < 30 && std::abs(r_trial) >= std::abs(r); ++h) {
      step *= 0.5;
      trial = u - step;
      r_trial = residual(trial);
    }
    u = trial;
    r = r_trial;
  }
  if (std::abs(r) <= 1e-13) return u;
  std::ostringstream msg;
  msg << "Burgers exact solution: Newton did not converge at (" << x << ", "
      << y << ", t = " << t << "); past shock formation?";
  throw Error(msg.str());
}

}  // namespace

State exact_solution(const ExactSolution& sol, double x, double y, double t) {
  switch (sol.kind) {
    case SolutionKind::AdvectedSine: {
      State s(1);
      s(0) = 1.0 + 0.5 * std::sin(kPi * ((x - sol.velocity.x() * t) +
                                         (y - sol.velocity.y() * t)));
      return s;
    }
    case SolutionKind::BurgersSine: {
      State s(1);
      s(0) = burgers_characteristic(x, y, t);
      return s;
    }
    case SolutionKind::EulerPlaneWave: {
      const double rho = 1.0 + 0.5 * std::sin(kPi * (x + y - 2.0 * t));
      return conserved_from_primitive(sol.gamma, rho, 1.0, 1.0, 1.0);
    }
    case SolutionKind::EulerVortex: {
      const VortexParameters vp;
      const double g = sol.gamma;
      const double xc = vp.x0 + std::cos(vp.theta) * t;
      const double yc = vp.y0 + std::sin(vp.theta) * t;
      const double dx = x - xc, dy = y - yc;
      const double r = (1.0 - dx * dx - dy * dy) / (vp.r0 * vp.r0);
      const double alpha =
          (g - 1.0) * vp.epsilon * vp.epsilon / (8.0 * g * kPi * kPi);
      const double base = 1.0 - alpha * std::exp(r);
      const double rho = std::pow(base, 1.0 / (g - 1.0));
      const double p = std::pow(base, g / (g - 1.0));
      const double amp = vp.epsilon / (2.0 * kPi * vp.r0) * std::exp(0.5 * r);
      const double u = std::cos(vp.theta) - amp * dy;
      const double v = std::sin(vp.theta) + amp * dx;
      return conserved_from_primitive(g, rho, u, v, p);
    }
    case SolutionKind::Constant:
      return State::Constant(sol.n_vars, sol.constant);
  }
  throw Error("exact_solution: unknown case");
}

}  // namespace aledg
