#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "wavest/differences.hpp"

using namespace wavest::diff;

namespace {

std::array<double, 5> times_of(const Steps4& s) {
  std::array<double, 5> t{0.0};
  for (int i = 0; i < 4; ++i) t[i + 1] = t[i] + s[i];
  return t;
}

}  // namespace

TEST_CASE("second difference") {
  CHECK(second_diff(0.0, 1.0, 2.0, {1.0, 1.0}) == 0.0);
  CHECK(second_diff(1.0, 0.0, 1.0, {1.0, 1.0}) == doctest::Approx(2.0));
  // t^2 on arbitrary steps
  const double a = 0.3, b = 0.7;
  CHECK(second_diff(0.0, a * a, (a + b) * (a + b), {a, b}) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("centered and forward differences") {
  CHECK(forward_diff(1.0, 3.0, 0.5) == doctest::Approx(4.0));
  CHECK(centered_diff(0.0, 3.0, {1.0, 2.0}) == doctest::Approx(1.0));
}

TEST_CASE("hat second difference") {
  const Steps4 s{0.2, 0.5, 0.3, 0.4};
  const auto t = times_of(s);
  const std::array<double, 3> th{(t[2] + t[0]) / 2, (t[3] + t[1]) / 2, (t[4] + t[2]) / 2};
  // affine in t-hat
  CHECK(hat_second_diff({2 * th[0] + 1, 2 * th[1] + 1, 2 * th[2] + 1}, s) == doctest::Approx(0.0).epsilon(1e-13));
  // uniform steps reduce to the plain stencil
  const double tau = 0.1;
  CHECK(hat_second_diff({1.0, 3.0, 2.0}, {tau, tau, tau, tau}) ==
        doctest::Approx((2.0 - 2 * 3.0 + 1.0) / (tau * tau)));
  // bar of t^2/2 under hat_d2
  std::array<double, 3> sbar;
  for (int j = 0; j < 3; ++j) {
    const auto f = [](double x) { return x * x / 2; };
    sbar[j] = bar_average(f(t[j]), f(t[j + 1]), f(t[j + 2]), {s[j], s[j + 1]});
  }
  const double sum = s[0] + s[1] + s[2] + s[3];
  CHECK(hat_second_diff(sbar, s) == doctest::Approx(1.0 + (s[3] - s[2] - s[1] + s[0]) / sum).epsilon(1e-12));
}

TEST_CASE("bar average") {
  CHECK(bar_average(3.0, 3.0, 3.0, {0.1, 0.7}) == doctest::Approx(3.0));
  CHECK(bar_average(1.0, 2.0, 5.0, {0.2, 0.2}) == doctest::Approx((5.0 + 4.0 + 1.0) / 4.0));
  const double tp = 0.3, tn = 0.5, t = 0.9;
  const auto f = [](double x) { return x * x / 2; };
  const double that = ((t + tn) + (t - tp)) / 2;
  CHECK(bar_average(f(t - tp), f(t), f(t + tn), {tp, tn}) ==
        doctest::Approx(that * that / 2 + (tn * tn + tp * tp) / 8).epsilon(1e-13));
}

TEST_CASE("fourth difference") {
  const double tau = 0.05;
  const Steps4 u{tau, tau, tau, tau};
  const auto w = fourth_diff_weights(u);
  const std::array<double, 5> expect{1, -4, 6, -4, 1};
  for (int i = 0; i < 5; ++i) CHECK(w[i] * std::pow(tau, 4) == doctest::Approx(expect[i]).epsilon(1e-12));
  std::array<double, 5> cubic, quartic;
  for (int i = 0; i < 5; ++i) {
    const double t = 0.3 + i * tau;
    cubic[i] = t * t * t - 2 * t + 1;
    quartic[i] = t * t * t * t;
  }
  CHECK(std::abs(fourth_diff(cubic, u)) * std::pow(tau, 4) < 1e-10);
  CHECK(fourth_diff(quartic, u) == doctest::Approx(24.0).epsilon(1e-6));
}

TEST_CASE("staggered coefficients on uniform steps") {
  const auto c = staggered_coefficients({0.1, 0.1, 0.1, 0.1});
  CHECK(c.alpha[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(c.alpha[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(c.alpha[2] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(c.sum_alpha == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("staggered identities on alternating steps and random data") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double ts = 0.02;
  for (int shift = 0; shift < 2; ++shift) {
    const Steps4 s = shift ? Steps4{ts, 0.1 * ts, ts, 0.1 * ts} : Steps4{0.1 * ts, ts, 0.1 * ts, ts};
    const auto c = staggered_coefficients(s);
    CHECK(c.sum_alpha == doctest::Approx(sum_alpha_closed_form(s)).epsilon(1e-13));
    for (int trial = 0; trial < 100; ++trial) {
      std::array<double, 5> w;
      for (auto& x : w) x = U(rng);
      std::array<double, 3> bar, d2;
      for (int j = 0; j < 3; ++j) {
        bar[j] = bar_average(w[j], w[j + 1], w[j + 2], {s[j], s[j + 1]});
        d2[j] = second_diff(w[j], w[j + 1], w[j + 2], {s[j], s[j + 1]});
      }
      const double lhs = hat_second_diff(bar, s);
      const double rhs = c.alpha[0] * d2[0] + c.alpha[1] * d2[1] + c.alpha[2] * d2[2];
      const double scale = std::abs(c.alpha[0] * d2[0]) + std::abs(c.alpha[1] * d2[1]) + std::abs(c.alpha[2] * d2[2]);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("staggered coefficients reject non-positive steps") {
  CHECK_THROWS_AS(staggered_coefficients({0.1, 0.0, 0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(staggered_coefficients({0.1, 0.1, -0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("time weights") {
  CHECK(interior_time_weight(0.1, 0.1) == doctest::Approx(0.01 / 12 + 0.01 / 8));
  CHECK(initial_time_weight(0.1, 0.1) == doctest::Approx(11.0 / 12.0 * 0.01));
}

TEST_CASE("quadratic interpolant and reconstruction") {
  const QuadraticInterpolant q({0.0, 0.1, 0.3}, {1.0, 2.0, 0.5});
  CHECK(std::abs(q(0.0) - 1.0) <= 1e-14);
  CHECK(std::abs(q(0.1) - 2.0) <= 1e-14);
  CHECK(std::abs(q(0.3) - 0.5) <= 1e-14);
  CHECK_THROWS_AS(QuadraticInterpolant({0.0, 0.1, 0.1}, {1, 2, 3}), std::invalid_argument);

  const std::vector<double> t{0.0, 0.1, 0.25, 0.3, 0.5};
  std::vector<std::vector<double>> vals;
  for (double x : t) vals.push_back({x * x, 1.0 - x * x});
  const QuadraticReconstruction r(t, vals);
  for (double x : {0.0, 0.03, 0.1, 0.17, 0.29, 0.41, 0.5}) {
    CHECK(r(x)[0] == doctest::Approx(x * x).epsilon(1e-13));
    CHECK(r(x)[1] == doctest::Approx(1.0 - x * x).epsilon(1e-13));
    CHECK(r.derivative(x)[0] == doctest::Approx(2 * x).epsilon(1e-12));
  }
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(r(t[i])[0] - t[i] * t[i]) <= 1e-14);
  CHECK(r.slab(0.05) == 0);
  CHECK(r.slab(0.26) == 2);

  // Uniform grid midpoint value (3 w^{n+1} + 6 w^n - w^{n-1}) / 8.
  const std::vector<double> tu{0.0, 1.0, 2.0, 3.0};
  const QuadraticReconstruction ru(tu, {{4.0}, {-1.0}, {2.0}, {7.0}});
  CHECK(ru(1.5)[0] == doctest::Approx((3 * 2.0 + 6 * -1.0 - 4.0) / 8.0));
}
