#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wavest/toy_ode.hpp"

using namespace wavest;
using namespace wavest::ode;

TEST_CASE("first step of the scheme") {
  OdeProblem p;
  p.A = 1.0;
  p.u0 = 1.0;
  p.v0 = 0.0;
  p.T = 0.2;
  const auto tr = solve_newmark_ode(p, TimeGrid::uniform(2, 0.2));
  CHECK(tr.u[1] == doctest::Approx(0.9975 / 1.0025).epsilon(1e-15));
}

TEST_CASE("zero data stays zero") {
  OdeProblem p;
  p.A = 37.0;
  const auto tr = solve_newmark_ode(p, TimeGrid::alternating(0.03, 0.1, 1.0));
  for (std::size_t n = 0; n < tr.u.size(); ++n) {
    CHECK(tr.u[n] == 0.0);
    CHECK(tr.v[n] == 0.0);
  }
}

TEST_CASE("linear and quadratic solutions are reproduced") {
  const double A = 50.0;
  for (const auto& grid : {TimeGrid::uniform(37, 1.0), TimeGrid::alternating(0.05, 0.01, 1.0), TimeGrid::decaying(0.01, 1.0)}) {
    OdeProblem lin;
    lin.A = A;
    lin.f = [A](double t) { return A * t; };
    lin.v0 = 1.0;
    const auto a = solve_newmark_ode(lin, grid);
    OdeProblem quad;
    quad.A = A;
    quad.f = [A](double t) { return 2.0 + A * t * t; };
    const auto b = solve_newmark_ode(quad, grid);
    for (std::size_t n = 0; n < grid.num_points(); ++n) {
      const double t = grid.time(n);
      CHECK(a.u[n] == doctest::Approx(t).epsilon(1e-12));
      CHECK(a.v[n] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.u[n] == doctest::Approx(t * t).epsilon(1e-12));
      CHECK(b.v[n] == doctest::Approx(2 * t).epsilon(1e-12));
    }
    CHECK(eta3_ode_cumulative(b, A, grid.num_steps()) < 1e-8);
    CHECK(eta5_ode_cumulative(b, A, grid.num_steps()) < 1e-6);
  }
}

TEST_CASE("velocity recovery") {
  CHECK(recover_velocity(0.0, 0.1, 1.0, 0.1) == doctest::Approx(1.0));
  CHECK(recover_velocity(1.0, 1.0, 0.0, 0.3) == 0.0);
  CHECK(recover_velocity(0.0, 0.01, 0.0, 0.1) == doctest::Approx(0.2));
  CHECK_THROWS_AS(recover_velocity(0.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("two-step relation holds for CN states") {
  auto p = OdeProblem::cosine(100.0);
  p.f = [](double t) { return std::sin(3 * t); };
  const auto tr = solve_newmark_ode(p, TimeGrid::alternating(0.02, 0.1, 1.0));
  for (std::size_t n = 1; n + 1 < tr.u.size(); ++n) CHECK(std::abs(newmark_two_step_residual(tr, 100.0, n)) < 1e-10);
}

TEST_CASE("energy error") {
  const auto p = OdeProblem::cosine(100.0);
  const auto grid = TimeGrid::uniform(100, 1.0);
  auto tr = solve_newmark_ode(p, grid);
  CHECK(ode_energy_error(tr, *p.exact, 100.0) == doctest::Approx(0.085).epsilon(0.03));
  for (std::size_t n = 0; n < tr.u.size(); ++n) {
    tr.u[n] = p.exact->u(grid.time(n));
    tr.v[n] = p.exact->du(grid.time(n));
  }
  CHECK(ode_energy_error(tr, *p.exact, 100.0) == 0.0);
  tr.u[5] += 1e-3;
  CHECK(ode_energy_error(tr, *p.exact, 100.0) == doctest::Approx(10.0 * 1e-3).epsilon(1e-9));
}

TEST_CASE("estimators on the cosine case") {
  const auto p = OdeProblem::cosine(100.0);
  const auto tr = solve_newmark_ode(p, TimeGrid::uniform(100, 1.0));
  CHECK(eta3_ode_cumulative(tr, 100.0, 100) == doctest::Approx(0.21).epsilon(0.03));
  CHECK(eta5_ode_cumulative(tr, 100.0, 100) == doctest::Approx(0.203).epsilon(0.03));
  const auto fine = solve_newmark_ode(p, TimeGrid::uniform(1000, 1.0));
  const double ratio = eta3_ode_cumulative(tr, 100.0, 100) / eta3_ode_cumulative(fine, 100.0, 1000);
  CHECK(ratio == doctest::Approx(100.0).epsilon(0.1));
  // cumulative sums are monotone
  double prev3 = 0.0, prev5 = 0.0;
  for (std::size_t n = 4; n <= 100; ++n) {
    const double a = eta3_ode_cumulative(tr, 100.0, n), b = eta5_ode_cumulative(tr, 100.0, n);
    CHECK(a >= prev3);
    CHECK(b >= prev5);
    prev3 = a;
    prev5 = b;
  }
  CHECK_THROWS_AS(eta3_ode_cumulative(tr, 100.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(eta5_ode_cumulative(tr, 100.0, 3), std::invalid_argument);
}

TEST_CASE("uniform fine grid: the two estimators agree") {
  const auto p = OdeProblem::cosine(100.0);
  const auto tr = solve_newmark_ode(p, TimeGrid::uniform(10000, 1.0));
  const double a = eta3_ode_cumulative(tr, 100.0, 10000), b = eta5_ode_cumulative(tr, 100.0, 10000);
  CHECK(std::abs(a - b) / a < 0.05);
}

TEST_CASE("effectivity") {
  CHECK(effectivity(0.085, 0.21) == doctest::Approx(2.47).epsilon(0.005));
  CHECK(effectivity(0.3, 0.3) == 1.0);
  CHECK(effectivity(0.077, 0.087) == doctest::Approx(1.13).epsilon(0.005));
  CHECK_THROWS_AS(effectivity(0.0, 1.0), std::domain_error);
}

TEST_CASE("problem validation") {
  OdeProblem p;
  p.A = 0.0;
  CHECK_THROWS_AS(solve_newmark_ode(p, TimeGrid::uniform(4, 1.0)), std::invalid_argument);
}
