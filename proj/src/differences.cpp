#include "wavest/differences.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace wavest::diff {

namespace {

// t-hat spacings: t-hat_n - t-hat_{n-1} and t-hat_{n-1} - t-hat_{n-2}.
std::array<double, 2> hat_spacings(const Steps4& s) {
  return {0.5 * (s[3] + s[1]), 0.5 * (s[2] + s[0])};
}

void require_positive(const Steps4& s) {
  for (double tau : s)
    if (!(tau > 0.0)) throw std::invalid_argument("time steps must be positive");
}

// Writes `c` as sum_k coef_k * D_k where D_{n-2}, D_{n-1}, D_n are the
// second-difference functionals placed at positions (0..2), (1..3), (2..4).
// Valid only for functionals that vanish on affine sequences.
std::array<double, 3> decompose(const std::array<double, 5>& c, const Steps4& s) {
  const auto d0 = second_diff_weights({s[0], s[1]});
  const auto d1 = second_diff_weights({s[1], s[2]});
  const auto d2 = second_diff_weights({s[2], s[3]});
  const double a0 = c[0] / d0[0];
  const double a2 = c[4] / d2[2];
  const double a1 = (c[2] - a0 * d0[2] - a2 * d2[0]) / d1[1];
  return {a0, a1, a2};
}

}  // namespace

double forward_diff(double w, double w_next, double tau) { return (w_next - w) / tau; }

double centered_diff(double w_prev, double w_next, const Steps2& s) {
  return (w_next - w_prev) / (s[1] + s[0]);
}

double second_diff(double w_prev, double w, double w_next, const Steps2& s) {
  return ((w_next - w) / s[1] - (w - w_prev) / s[0]) / ((s[1] + s[0]) / 2.0);
}

double hat_second_diff(const std::array<double, 3>& w, const Steps4& s) {
  const auto [a, b] = hat_spacings(s);
  return 2.0 / (a + b) * ((w[2] - w[1]) / a - (w[1] - w[0]) / b);
}

double bar_average(double w_prev, double w, double w_next, const Steps2& s) {
  return (s[1] * (w_next + w) + s[0] * (w + w_prev)) / (2.0 * (s[1] + s[0]));
}

double fourth_diff(const std::array<double, 5>& w, const Steps4& s) {
  const std::array<double, 3> d2{second_diff(w[0], w[1], w[2], {s[0], s[1]}),
                                 second_diff(w[1], w[2], w[3], {s[1], s[2]}),
                                 second_diff(w[2], w[3], w[4], {s[2], s[3]})};
  return hat_second_diff(d2, s);
}

void second_diff(std::span<const double> w_prev, std::span<const double> w,
                 std::span<const double> w_next, const Steps2& s, std::span<double> out) {
  assert(w_prev.size() == out.size() && w.size() == out.size() && w_next.size() == out.size());
  const double half = (s[1] + s[0]) / 2.0;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ((w_next[i] - w[i]) / s[1] - (w[i] - w_prev[i]) / s[0]) / half;
}

void centered_diff(std::span<const double> w_prev, std::span<const double> w_next,
                   const Steps2& s, std::span<double> out) {
  const double span = s[1] + s[0];
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (w_next[i] - w_prev[i]) / span;
}

void hat_second_diff(std::span<const double> w0, std::span<const double> w1,
                     std::span<const double> w2, const Steps4& s, std::span<double> out) {
  const auto [a, b] = hat_spacings(s);
  const double scale = 2.0 / (a + b);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = scale * ((w2[i] - w1[i]) / a - (w1[i] - w0[i]) / b);
}

std::array<double, 3> second_diff_weights(const Steps2& s) {
  const double half = (s[1] + s[0]) / 2.0;
  return {1.0 / (s[0] * half), -(1.0 / s[0] + 1.0 / s[1]) / half, 1.0 / (s[1] * half)};
}

std::array<double, 3> bar_weights(const Steps2& s) {
  const double denom = 2.0 * (s[1] + s[0]);
  return {s[0] / denom, (s[0] + s[1]) / denom, s[1] / denom};
}

std::array<double, 3> hat_second_diff_weights(const Steps4& s) {
  const auto [a, b] = hat_spacings(s);
  const double scale = 2.0 / (a + b);
  return {scale / b, -scale * (1.0 / a + 1.0 / b), scale / a};
}

std::array<double, 5> fourth_diff_weights(const Steps4& s) {
  const auto h = hat_second_diff_weights(s);
  std::array<double, 5> c{};
  for (std::size_t j = 0; j < 3; ++j) {
    const auto d = second_diff_weights({s[j], s[j + 1]});
    for (std::size_t i = 0; i < 3; ++i) c[j + i] += h[j] * d[i];
  }
  return c;
}

std::array<double, 5> hat_bar_weights(const Steps4& s) {
  const auto h = hat_second_diff_weights(s);
  std::array<double, 5> c{};
  for (std::size_t j = 0; j < 3; ++j) {
    const auto b = bar_weights({s[j], s[j + 1]});
    for (std::size_t i = 0; i < 3; ++i) c[j + i] += h[j] * b[i];
  }
  return c;
}

StaggeredCoefficients staggered_coefficients(const Steps4& s) {
  require_positive(s);
  StaggeredCoefficients out;
  out.alpha = decompose(hat_bar_weights(s), s);
  out.sum_alpha = out.alpha[0] + out.alpha[1] + out.alpha[2];

  // G(s) = sum_k alpha_k d_k(s) - (sum alpha) d_n(s) over s^{n-3} .. s^{n+1},
  // with d_k the centered first difference; G = -tau_n sum_k beta_k D_k.
  std::array<double, 5> g{};
  for (std::size_t j = 0; j < 3; ++j) {
    const double inv = 1.0 / (s[j] + s[j + 1]);
    g[j] -= out.alpha[j] * inv;
    g[j + 2] += out.alpha[j] * inv;
  }
  const double inv_n = 1.0 / (s[2] + s[3]);
  g[2] += out.sum_alpha * inv_n;
  g[4] -= out.sum_alpha * inv_n;
  const auto c = decompose(g, s);
  for (std::size_t j = 0; j < 3; ++j) out.beta[j] = -c[j] / s[3];
  return out;
}

double sum_alpha_closed_form(const Steps4& s) {
  return 1.0 + (s[3] - s[2] - s[1] + s[0]) / (s[3] + s[2] + s[1] + s[0]);
}

double interior_time_weight(double tau_prev, double tau) {
  return tau * tau / 12.0 + tau_prev * tau / 8.0;
}

double initial_time_weight(double tau0, double tau1) {
  return 5.0 / 12.0 * tau0 * tau0 + 0.5 * tau0 * tau1;
}

QuadraticInterpolant::QuadraticInterpolant(std::array<double, 3> times,
                                           std::array<double, 3> values)
    : t_(times), w_(values) {
  if (t_[0] == t_[1] || t_[1] == t_[2] || t_[0] == t_[2])
    throw std::invalid_argument("quadratic interpolation needs three distinct times");
}

double QuadraticInterpolant::operator()(double t) const {
  const double l0 = (t - t_[1]) * (t - t_[2]) / ((t_[0] - t_[1]) * (t_[0] - t_[2]));
  const double l1 = (t - t_[0]) * (t - t_[2]) / ((t_[1] - t_[0]) * (t_[1] - t_[2]));
  const double l2 = (t - t_[0]) * (t - t_[1]) / ((t_[2] - t_[0]) * (t_[2] - t_[1]));
  return l0 * w_[0] + l1 * w_[1] + l2 * w_[2];
}

double QuadraticInterpolant::derivative(double t) const {
  const double l0 = (2.0 * t - t_[1] - t_[2]) / ((t_[0] - t_[1]) * (t_[0] - t_[2]));
  const double l1 = (2.0 * t - t_[0] - t_[2]) / ((t_[1] - t_[0]) * (t_[1] - t_[2]));
  const double l2 = (2.0 * t - t_[0] - t_[1]) / ((t_[2] - t_[0]) * (t_[2] - t_[1]));
  return l0 * w_[0] + l1 * w_[1] + l2 * w_[2];
}

double QuadraticInterpolant::second_derivative() const {
  return 2.0 * (w_[0] / ((t_[0] - t_[1]) * (t_[0] - t_[2])) +
                w_[1] / ((t_[1] - t_[0]) * (t_[1] - t_[2])) +
                w_[2] / ((t_[2] - t_[0]) * (t_[2] - t_[1])));
}

QuadraticReconstruction::QuadraticReconstruction(std::vector<double> times,
                                                 std::vector<std::vector<double>> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() < 3 || values_.size() != times_.size())
    throw std::invalid_argument("reconstruction needs >= 3 nodes with matching values");
  for (std::size_t n = 0; n + 1 < times_.size(); ++n)
    if (!(times_[n + 1] > times_[n]))
      throw std::invalid_argument("reconstruction nodes must be strictly increasing");
  for (const auto& v : values_)
    if (v.size() != values_.front().size())
      throw std::invalid_argument("reconstruction values must share a length");
}

std::size_t QuadraticReconstruction::slab(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return 0;
  const auto n = static_cast<std::size_t>(it - times_.begin()) - 1;
  return std::min(n, times_.size() - 2);
}

std::array<double, 3> QuadraticReconstruction::lagrange(std::size_t f, double t) const {
  const double t0 = times_[f], t1 = times_[f + 1], t2 = times_[f + 2];
  return {(t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2)),
          (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2)),
          (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1))};
}

std::array<double, 3> QuadraticReconstruction::lagrange_derivative(std::size_t f,
                                                                   double t) const {
  const double t0 = times_[f], t1 = times_[f + 1], t2 = times_[f + 2];
  return {(2.0 * t - t1 - t2) / ((t0 - t1) * (t0 - t2)),
          (2.0 * t - t0 - t2) / ((t1 - t0) * (t1 - t2)),
          (2.0 * t - t0 - t1) / ((t2 - t0) * (t2 - t1))};
}

std::vector<double> QuadraticReconstruction::operator()(double t) const {
  const std::size_t f = first_node(slab(t));
  const auto l = lagrange(f, t);
  std::vector<double> out(values_.front().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = l[0] * values_[f][i] + l[1] * values_[f + 1][i] + l[2] * values_[f + 2][i];
  return out;
}

std::vector<double> QuadraticReconstruction::derivative(double t) const {
  const std::size_t f = first_node(slab(t));
  const auto l = lagrange_derivative(f, t);
  std::vector<double> out(values_.front().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = l[0] * values_[f][i] + l[1] * values_[f + 1][i] + l[2] * values_[f + 2][i];
  return out;
}

}  // namespace wavest::diff
