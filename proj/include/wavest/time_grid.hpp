#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wavest {

/// Subdivision 0 = t_0 < t_1 < ... < t_N = T of the time interval.
///
/// Steps are tau_n = t_{n+1} - t_n for n = 0..N-1. The grid always starts at 0
/// and the last point is exactly T.
class TimeGrid {
 public:
  /// Validates strict monotonicity and t_0 = 0.
  explicit TimeGrid(std::vector<double> points, std::string rule = "custom");

  /// N equal steps of T/N.
  static TimeGrid uniform(std::size_t num_steps, double final_time);

  /// Steps alternate (small_ratio * taustar, taustar), starting with the small
  /// one at n = 0. The last step is truncated so that the grid ends on T.
  static TimeGrid alternating(double taustar, double small_ratio, double final_time);

  /// Alternating grid with N steps exactly: taustar = 2T / ((1 + ratio) N).
  static TimeGrid alternating_steps(std::size_t num_steps, double small_ratio,
                                    double final_time);

  /// tau_0 given, then tau_n = tau_0 * min(cap, t_n^{-1/2}) for n >= 1.
  /// With cap <= 0 the literal rule tau_0 * t_n^{-1/2} is used.
  static TimeGrid decaying(double tau0, double final_time, double cap = 10.0);

  std::size_t num_points() const { return points_.size(); }
  std::size_t num_steps() const { return points_.size() - 1; }
  double time(std::size_t n) const { return points_[n]; }
  double step(std::size_t n) const { return points_[n + 1] - points_[n]; }
  double final_time() const { return points_.back(); }
  double final_step() const { return step(num_steps() - 1); }
  double max_step() const;

  /// max over n of max(tau_{n+1}/tau_n, tau_n/tau_{n+1}); 1 for a single step.
  double max_step_ratio() const;

  std::span<const double> points() const { return points_; }
  std::vector<double> steps() const;
  const std::string& rule() const { return rule_; }

 private:
  std::vector<double> points_;
  std::string rule_;
};

}  // namespace wavest
