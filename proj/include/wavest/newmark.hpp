#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "wavest/fem.hpp"
#include "wavest/time_grid.hpp"

namespace wavest::wave {

using SpaceTimeFunction = std::function<double(double t, double x, double y)>;
using SpaceTimeGradient = std::function<std::array<double, 2>(double t, double x, double y)>;

struct ExactWave {
  SpaceTimeFunction u;
  SpaceTimeFunction u_t;
  SpaceTimeGradient grad_u;
};

/// u_tt - Laplace u = f on the mesh domain, u = 0 on its boundary.
/// Empty callables mean zero data.
struct WaveProblem {
  SpaceTimeFunction f;
  SpatialGradient grad_u0;
  SpatialGradient grad_v0;
  double T = 1.0;
  std::optional<ExactWave> exact;

  void validate() const;
};

struct WaveState {
  double t = 0.0;
  Field u;  // h10
  Field v;  // h10
  Field f;  // l2, P_h f(t)
};

/// The last (at most 5) states and the steps between them.
class StateWindow {
 public:
  static constexpr std::size_t capacity = 5;

  void push(WaveState s);
  void clear();
  std::size_t size() const { return states_.size(); }
  /// i = 0 is the newest state.
  const WaveState& back(std::size_t i = 0) const;
  /// Step between back(i + 1) and back(i).
  double step_back(std::size_t i) const;

 private:
  std::deque<WaveState> states_;
};

/// Newmark (beta = 1/4, gamma = 1/2) in its Crank-Nicolson one-step form:
///   (M + tau^2/4 K) u' = M (u + tau v) - tau^2/4 K u + tau^2/4 M (f + f')
///   v' = 2 (u' - u) / tau - v
class NewmarkSolver {
 public:
  NewmarkSolver(const P1Space& space, WaveProblem problem);

  /// u0 = Pi_h u0, v0 = Pi_h v0, f0 = P_h f(0).
  WaveState initial_state() const;
  WaveState first_step(const WaveState& s0, double tau0) const { return step(s0, tau0); }
  WaveState step(const WaveState& s, double tau) const;

  using Callback = std::function<void(const StateWindow&, std::size_t n)>;
  /// Emits every state (n = 0 .. N) through `on_state`. A failed solve is
  /// rethrown as SolverError naming the step.
  void run(const TimeGrid& grid, const Callback& on_state) const;

  /// P_h f(t), or zero when f is empty.
  Field project_load(double t) const;

  const P1Space& space() const { return space_; }
  const WaveProblem& problem() const { return problem_; }
  /// Solves of the (M + tau^2/4 K) systems.
  SolverStats system_stats() const;

 private:
  const SpdSolver& system(double tau) const;
  // Stamps the new state with t_next so that grid times are kept exactly.
  WaveState advance(const WaveState& s, double tau, double t_next) const;

  const P1Space& space_;
  WaveProblem problem_;
  mutable std::map<double, std::unique_ptr<SpdSolver>> cache_;
  mutable SolverStats retired_;
};

/// Discrete energy (v^T M v + u^T K u) / 2.
double discrete_energy(const P1Space& space, const WaveState& s);

/// Residual of the two-step Newmark relation
///   M (d_{n+1/2} u - d_{n-1/2} u) + K (tau_n (u^{n+1}+u^n) + tau_{n-1} (u^n+u^{n-1})) / 4
///     = M (tau_n (f^{n+1}+f^n) + tau_{n-1} (f^n+f^{n-1})) / 4
/// as a Euclidean norm divided by the sum of the norms of the three terms.
double two_step_residual(const P1Space& space, const WaveState& prev, const WaveState& cur,
                         const WaveState& next);

}  // namespace wavest::wave
