#pragma once

// Finite differences in time on non-uniform grids.
//
// Index convention: a window for step n holds w^{n-1}, w^n, w^{n+1} (three
// points) or w^{n-3} .. w^{n+1} (five points). Steps are tau_k = t_{k+1} - t_k,
// so a three-point window uses (tau_{n-1}, tau_n) and a five-point window uses
// (tau_{n-3}, tau_{n-2}, tau_{n-1}, tau_n).

#include <array>
#include <span>
#include <vector>

namespace wavest::diff {

using Steps2 = std::array<double, 2>;  // tau_{n-1}, tau_n
using Steps4 = std::array<double, 4>;  // tau_{n-3} .. tau_n

/// (w^{n+1} - w^n) / tau_n
double forward_diff(double w, double w_next, double tau);

/// Centered first difference (w^{n+1} - w^{n-1}) / (tau_n + tau_{n-1}).
double centered_diff(double w_prev, double w_next, const Steps2& steps);

/// Second difference with tau_{n-1/2} = (tau_n + tau_{n-1}) / 2.
double second_diff(double w_prev, double w, double w_next, const Steps2& steps);

/// Staggered-grid second difference on t-hat_j = (t_{j+1} + t_{j-1}) / 2.
/// `w` holds values at t-hat_{n-2}, t-hat_{n-1}, t-hat_n.
double hat_second_diff(const std::array<double, 3>& w, const Steps4& steps);

/// Step-weighted average w-bar^n of three consecutive values.
double bar_average(double w_prev, double w, double w_next, const Steps2& steps);

/// Fourth difference: hat_second_diff applied to the second differences at
/// n-2, n-1, n. `w` holds w^{n-3} .. w^{n+1}.
double fourth_diff(const std::array<double, 5>& w, const Steps4& steps);

// Field versions; all spans have the same length, `out` may not alias inputs.
void second_diff(std::span<const double> w_prev, std::span<const double> w,
                 std::span<const double> w_next, const Steps2& steps, std::span<double> out);
void centered_diff(std::span<const double> w_prev, std::span<const double> w_next,
                   const Steps2& steps, std::span<double> out);
void hat_second_diff(std::span<const double> w0, std::span<const double> w1,
                     std::span<const double> w2, const Steps4& steps, std::span<double> out);

/// Linear-combination weights of the three-point operators, so that
/// op(w) = c[0] w^{n-1} + c[1] w^n + c[2] w^{n+1}.
std::array<double, 3> second_diff_weights(const Steps2& steps);
std::array<double, 3> bar_weights(const Steps2& steps);
std::array<double, 3> hat_second_diff_weights(const Steps4& steps);

/// Five-point weights of the fourth difference (w^{n-3} .. w^{n+1}).
std::array<double, 5> fourth_diff_weights(const Steps4& steps);

/// Five-point weights of hat_second_diff applied to w-bar at n-2, n-1, n.
std::array<double, 5> hat_bar_weights(const Steps4& steps);

/// Coefficients relating the staggered operators to plain second differences:
///   hat_d2(w-bar) = sum_k alpha_k d2_k(w)                             (k = n-2, n-1, n)
///   sum_k alpha_k d2_k(w) = (sum alpha) d2_n(w) - tau_n sum_k beta_k d2_k(s)
/// the second identity for w, s coupled by (w^{k+1}-w^k)/tau_k = (s^k+s^{k+1})/2.
struct StaggeredCoefficients {
  std::array<double, 3> alpha{};  // alpha_{n-2}, alpha_{n-1}, alpha_n
  std::array<double, 3> beta{};   // beta_{n-2}, beta_{n-1}, beta_n
  double sum_alpha = 0.0;
};

/// Throws std::invalid_argument if any step is not positive.
StaggeredCoefficients staggered_coefficients(const Steps4& steps);

/// Closed form of sum alpha: 1 + (tau_n - tau_{n-1} - tau_{n-2} + tau_{n-3}) / sum tau.
double sum_alpha_closed_form(const Steps4& steps);

/// Time weight (tau_k^2/12 + tau_{k-1} tau_k / 8) of the interior indicators.
double interior_time_weight(double tau_prev, double tau);

/// Time weight (5/12 tau_0^2 + 1/2 tau_0 tau_1) of the initial indicator.
double initial_time_weight(double tau0, double tau1);

/// Piecewise-quadratic-in-time interpolant through three nodes.
class QuadraticInterpolant {
 public:
  /// Throws std::invalid_argument when two nodes coincide.
  QuadraticInterpolant(std::array<double, 3> times, std::array<double, 3> values);
  double operator()(double t) const;
  double derivative(double t) const;
  double second_derivative() const;

 private:
  std::array<double, 3> t_;
  std::array<double, 3> w_;
};

/// Continuous reconstruction of a sequence of nodal vectors: on [t_n, t_{n+1}],
/// n >= 1, the quadratic through (t_{n-1}, t_n, t_{n+1}); on [t_0, t_1] the
/// quadratic through (t_0, t_1, t_2).
class QuadraticReconstruction {
 public:
  QuadraticReconstruction(std::vector<double> times, std::vector<std::vector<double>> values);

  std::vector<double> operator()(double t) const;
  std::vector<double> derivative(double t) const;

  /// Index n of the slab [t_n, t_{n+1}] containing t (clamped to the grid).
  std::size_t slab(double t) const;

 private:
  std::array<double, 3> lagrange(std::size_t first, double t) const;
  std::array<double, 3> lagrange_derivative(std::size_t first, double t) const;
  std::size_t first_node(std::size_t slab) const { return slab == 0 ? 0 : slab - 1; }

  std::vector<double> times_;
  std::vector<std::vector<double>> values_;
};

}  // namespace wavest::diff
