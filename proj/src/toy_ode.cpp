#include "wavest/toy_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavest/differences.hpp"

namespace wavest::ode {

void OdeProblem::validate() const {
  if (!(A > 0.0)) throw std::invalid_argument("ODE stiffness A must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("ODE final time must be positive");
  if (!f) throw std::invalid_argument("ODE right-hand side is empty");
}

OdeProblem OdeProblem::cosine(double A, double T) {
  OdeProblem p;
  p.A = A;
  p.T = T;
  p.u0 = 1.0;
  p.v0 = 0.0;
  const double w = std::sqrt(A);
  p.exact = ExactSolution{[w](double t) { return std::cos(w * t); },
                          [w](double t) { return -w * std::sin(w * t); }};
  return p;
}

double recover_velocity(double u, double u_next, double v_prev, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
  return 2.0 * (u_next - u) / tau - v_prev;
}

OdeTrajectory solve_newmark_ode(const OdeProblem& problem, const TimeGrid& grid) {
  problem.validate();
  const std::size_t np = grid.num_points();
  OdeTrajectory traj{grid, std::vector<double>(np), std::vector<double>(np),
                     std::vector<double>(np)};
  for (std::size_t n = 0; n < np; ++n) traj.f[n] = problem.f(grid.time(n));

  const double A = problem.A;
  traj.u[0] = problem.u0;
  traj.v[0] = problem.v0;
  for (std::size_t n = 0; n + 1 < np; ++n) {
    const double tau = grid.step(n);
    const double u = traj.u[n];
    traj.u[n + 1] =
        (u + tau * traj.v[n] - A * tau * tau * u / 4.0 + tau * tau * (traj.f[n + 1] + traj.f[n]) / 4.0) /
        (1.0 + A * tau * tau / 4.0);
    traj.v[n + 1] = recover_velocity(u, traj.u[n + 1], traj.v[n], tau);
  }
  return traj;
}

double newmark_two_step_residual(const OdeTrajectory& traj, double A, std::size_t n) {
  if (n == 0 || n + 1 >= traj.u.size()) throw std::out_of_range("two-step residual index");
  const double tp = traj.grid.step(n - 1);
  const double tn = traj.grid.step(n);
  const auto& u = traj.u;
  const auto& f = traj.f;
  return (u[n + 1] - u[n]) / tn - (u[n] - u[n - 1]) / tp +
         A * (tn * (u[n + 1] + u[n]) + tp * (u[n] + u[n - 1])) / 4.0 -
         (tn * (f[n + 1] + f[n]) + tp * (f[n] + f[n - 1])) / 4.0;
}

double ode_energy_error(const OdeTrajectory& traj, const ExactSolution& exact, double A) {
  double e = 0.0;
  for (std::size_t n = 0; n < traj.u.size(); ++n) {
    const double t = traj.grid.time(n);
    const double dv = traj.v[n] - exact.du(t);
    const double du = traj.u[n] - exact.u(t);
    e = std::max(e, std::sqrt(dv * dv + A * du * du));
  }
  return e;
}

OdeIndicators ode_indicators(const OdeTrajectory& traj, double A) {
  const std::size_t N = traj.grid.num_steps();
  if (N < 2) throw std::invalid_argument("indicators need at least 2 time steps");
  const auto& u = traj.u;
  const auto& v = traj.v;
  const auto& f = traj.f;
  const auto tau = traj.grid.steps();

  // Second differences at k = 1..N-1 (index 0 unused).
  std::vector<double> d2u(N, 0.0), d2v(N, 0.0), d2f(N, 0.0);
  for (std::size_t k = 1; k < N; ++k) {
    const diff::Steps2 s{tau[k - 1], tau[k]};
    d2u[k] = diff::second_diff(u[k - 1], u[k], u[k + 1], s);
    d2v[k] = diff::second_diff(v[k - 1], v[k], v[k + 1], s);
    d2f[k] = diff::second_diff(f[k - 1], f[k], f[k + 1], s);
  }

  OdeIndicators out{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
  auto payload3 = [&](std::size_t k) {
    const double r = d2f[k] - A * d2u[k];
    return std::sqrt(A * d2v[k] * d2v[k] + r * r);
  };
  out.eta3[0] = tau[0] * diff::initial_time_weight(tau[0], tau[1]) * payload3(1);
  for (std::size_t k = 1; k < N; ++k)
    out.eta3[k] = tau[k] * diff::interior_time_weight(tau[k - 1], tau[k]) * payload3(k);

  for (std::size_t k = 3; k < N; ++k) {
    const diff::Steps4 s{tau[k - 3], tau[k - 2], tau[k - 1], tau[k]};
    const double d4u = diff::hat_second_diff({d2u[k - 2], d2u[k - 1], d2u[k]}, s);
    out.eta5[k] = tau[k] * diff::interior_time_weight(tau[k - 1], tau[k]) *
                  std::sqrt(A * d2v[k] * d2v[k] + d4u * d4u);
  }
  return out;
}

double eta3_ode_cumulative(const OdeTrajectory& traj, double A, std::size_t n) {
  if (n < 2 || n > traj.grid.num_steps())
    throw std::invalid_argument("3-point estimator needs 2 <= n <= N");
  const auto ind = ode_indicators(traj, A);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += ind.eta3[k];
  return s;
}

double eta5_ode_cumulative(const OdeTrajectory& traj, double A, std::size_t n) {
  if (n < 4 || n > traj.grid.num_steps())
    throw std::invalid_argument("5-point estimator needs 4 <= n <= N");
  const auto ind = ode_indicators(traj, A);
  double s = 0.0;
  for (std::size_t k = 3; k < n; ++k) s += ind.eta5[k];
  return s;
}

double effectivity(double e, double eta) {
  if (e == 0.0) throw std::domain_error("effectivity index undefined for zero error");
  return eta / e;
}

}  // namespace wavest::ode
