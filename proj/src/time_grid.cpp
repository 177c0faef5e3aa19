#include "wavest/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wavest {

namespace {

// Marches t_{n+1} = t_n + next_step(n, t_n) until T. The final step is
// truncated to land on T; a step that ends within 1e-6 tau of T (accumulated
// round-off) is snapped to T instead of leaving a sliver step behind.
std::vector<double> march(double final_time,
                          const std::function<double(std::size_t, double)>& next_step) {
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  std::vector<double> pts{0.0};
  double t = 0.0;
  for (std::size_t n = 0;; ++n) {
    const double tau = next_step(n, t);
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw std::invalid_argument("grid rule produced a non-positive step at n=" +
                                  std::to_string(n));
    const double next = t + tau;
    if (next >= final_time - 1e-6 * tau) {
      pts.push_back(final_time);
      break;
    }
    pts.push_back(next);
    t = next;
  }
  return pts;
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> points, std::string rule)
    : points_(std::move(points)), rule_(std::move(rule)) {
  if (points_.size() < 2) throw std::invalid_argument("time grid needs at least 2 points");
  if (points_.front() != 0.0) throw std::invalid_argument("time grid must start at t=0");
  for (std::size_t n = 0; n + 1 < points_.size(); ++n)
    if (!(points_[n + 1] > points_[n]))
      throw std::invalid_argument("time grid must be strictly increasing (n=" +
                                  std::to_string(n) + ")");
}

TimeGrid TimeGrid::uniform(std::size_t num_steps, double final_time) {
  if (num_steps == 0) throw std::invalid_argument("uniform grid needs N >= 1");
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  std::vector<double> pts(num_steps + 1);
  for (std::size_t n = 0; n <= num_steps; ++n)
    pts[n] = final_time * static_cast<double>(n) / static_cast<double>(num_steps);
  pts.back() = final_time;
  return TimeGrid(std::move(pts), "uniform");
}

TimeGrid TimeGrid::alternating(double taustar, double small_ratio, double final_time) {
  if (!(taustar > 0.0) || !(small_ratio > 0.0))
    throw std::invalid_argument("alternating grid needs taustar > 0 and ratio > 0");
  auto pts = march(final_time, [&](std::size_t n, double) {
    return n % 2 == 0 ? small_ratio * taustar : taustar;
  });
  return TimeGrid(std::move(pts), "alternating");
}

TimeGrid TimeGrid::alternating_steps(std::size_t num_steps, double small_ratio,
                                     double final_time) {
  if (num_steps < 2) throw std::invalid_argument("alternating grid needs N >= 2");
  const double taustar =
      2.0 * final_time / ((1.0 + small_ratio) * static_cast<double>(num_steps));
  auto grid = alternating(taustar, small_ratio, final_time);
  if (num_steps % 2 == 0 && grid.num_steps() != num_steps)
    throw std::logic_error("alternating grid did not close after N steps");
  return grid;
}

TimeGrid TimeGrid::decaying(double tau0, double final_time, double cap) {
  if (!(tau0 > 0.0)) throw std::invalid_argument("decaying grid needs tau0 > 0");
  const bool literal = !(cap > 0.0);
  auto pts = march(final_time, [&](std::size_t n, double t) {
    if (n == 0) return tau0;
    const double factor = 1.0 / std::sqrt(t);
    return tau0 * (literal ? factor : std::min(cap, factor));
  });
  return TimeGrid(std::move(pts), literal ? "decay-literal" : "decay");
}

double TimeGrid::max_step() const {
  double m = 0.0;
  for (std::size_t n = 0; n < num_steps(); ++n) m = std::max(m, step(n));
  return m;
}

double TimeGrid::max_step_ratio() const {
  double r = 1.0;
  for (std::size_t n = 0; n + 1 < num_steps(); ++n) {
    const double a = step(n);
    const double b = step(n + 1);
    r = std::max(r, std::max(a / b, b / a));
  }
  return r;
}

std::vector<double> TimeGrid::steps() const {
  std::vector<double> s(num_steps());
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = step(n);
  return s;
}

}  // namespace wavest
