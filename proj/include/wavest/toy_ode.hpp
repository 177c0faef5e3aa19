#pragma once

// Scalar model u'' + A u = f discretized by the Newmark scheme (beta = 1/4,
// gamma = 1/2), with the 3-point and 5-point time error indicators.

#include <functional>
#include <optional>
#include <vector>

#include "wavest/time_grid.hpp"

namespace wavest::ode {

using ScalarFunction = std::function<double(double)>;

struct ExactSolution {
  ScalarFunction u;
  ScalarFunction du;
};

struct OdeProblem {
  double A = 1.0;
  ScalarFunction f = [](double) { return 0.0; };
  double u0 = 0.0;
  double v0 = 0.0;
  double T = 1.0;
  std::optional<ExactSolution> exact;

  /// Throws std::invalid_argument unless A > 0 and T > 0.
  void validate() const;

  /// f = 0, u = cos(sqrt(A) t): the test problem of the effectivity tables.
  static OdeProblem cosine(double A, double T = 1.0);
};

struct OdeTrajectory {
  TimeGrid grid;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> f;  // f sampled at the grid points
};

/// v^{n+1} = 2 (u^{n+1} - u^n) / tau - v^n.
double recover_velocity(double u, double u_next, double v_prev, double tau);

/// Marches the scheme in its one-step Crank-Nicolson form, which produces the
/// same states as the two-step Newmark recurrence.
OdeTrajectory solve_newmark_ode(const OdeProblem& problem, const TimeGrid& grid);

/// Residual of the two-step Newmark relation at step n (1 <= n <= N-1).
double newmark_two_step_residual(const OdeTrajectory& traj, double A, std::size_t n);

/// max_n (|v^n - u'(t_n)|^2 + A |u^n - u(t_n)|^2)^{1/2}
double ode_energy_error(const OdeTrajectory& traj, const ExactSolution& exact, double A);

/// Per-step indicators tau_k eta_T(t_k) / tau_k eta-hat_T(t_k), already
/// multiplied by tau_k. Index k runs over 0..N-1; entries not defined by the
/// estimator (k < 3 for the 5-point one) are 0.
struct OdeIndicators {
  std::vector<double> eta3;
  std::vector<double> eta5;
};
OdeIndicators ode_indicators(const OdeTrajectory& traj, double A);

/// sum_{k=0}^{n-1} tau_k eta_T(t_k). Requires 2 <= n <= N.
double eta3_ode_cumulative(const OdeTrajectory& traj, double A, std::size_t n);

/// sum_{k=3}^{n-1} tau_k eta-hat_T(t_k). Requires 4 <= n <= N.
double eta5_ode_cumulative(const OdeTrajectory& traj, double A, std::size_t n);

/// eta / e; throws std::domain_error when e == 0.
double effectivity(double e, double eta);

}  // namespace wavest::ode
