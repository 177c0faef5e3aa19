#include <cmath>
#include <stdexcept>
#include <numeric>

#include "doctest.h"
#include "wavest/harness.hpp"
#include "wavest/time_grid.hpp"

using namespace wavest;

namespace {

double step_sum(const TimeGrid& g) {
  const auto s = g.steps();
  return std::accumulate(s.begin(), s.end(), 0.0);
}

}  // namespace

TEST_CASE("uniform grid has equal steps and lands on T") {
  const auto g = TimeGrid::uniform(100, 1.0);
  CHECK(g.num_steps() == 100);
  for (std::size_t n = 0; n < g.num_steps(); ++n) CHECK(g.step(n) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(g.final_time() == 1.0);
  CHECK(g.max_step_ratio() == doctest::Approx(1.0));
}

TEST_CASE("alternating grid cycles small and long steps") {
  const std::size_t K = 180;
  const double taustar = 2.0 / (1.1 * K);
  const auto g = TimeGrid::alternating(taustar, 0.1, 1.0);
  CHECK(g.num_steps() == K);
  for (std::size_t n = 0; n < g.num_steps(); ++n) {
    const double expect = n % 2 == 0 ? 0.1 * taustar : taustar;
    CHECK(g.step(n) == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(g.max_step_ratio() == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("alternating_steps closes after N steps for the table sizes") {
  for (std::size_t N : {180u, 1816u, 18180u}) CHECK(TimeGrid::alternating_steps(N, 0.1, 1.0).num_steps() == N);
  for (std::size_t N : {196u, 1978u, 19800u}) CHECK(TimeGrid::alternating_steps(N, 0.01, 1.0).num_steps() == N);
}

TEST_CASE("alternating grid truncates its last step onto T") {
  const auto g = TimeGrid::alternating(0.3, 0.1, 1.0);
  CHECK(g.final_time() == 1.0);
  CHECK(g.final_step() < 0.3);
  CHECK(step_sum(g) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("decaying grid: capped and literal variants") {
  const auto capped = TimeGrid::decaying(0.01, 1.0);
  const auto literal = TimeGrid::decaying(0.01, 1.0, 0.0);
  CHECK(capped.rule() == "decay");
  CHECK(literal.rule() == "decay-literal");
  for (const auto* g : {&capped, &literal}) {
    CHECK(g->time(1) == doctest::Approx(0.01));
    CHECK(g->final_time() == 1.0);
    CHECK(step_sum(*g) == doctest::Approx(1.0).epsilon(1e-14));
    // Order of magnitude of the printed N_ts = 105, tau_F = .0063.
    CHECK(g->num_steps() > 30);
    CHECK(g->num_steps() < 300);
    CHECK(g->final_step() <= 0.0100001);
  }
  // Below t = 0.01 the cap binds: tau_0 = 1e-4 gives t_1^{-1/2} = 100 > 10.
  const auto small = TimeGrid::decaying(1e-4, 1.0);
  CHECK(small.step(1) == doctest::Approx(1e-3));
  const auto small_literal = TimeGrid::decaying(1e-4, 1.0, 0.0);
  CHECK(small_literal.step(1) == doctest::Approx(1e-2));
}

TEST_CASE("grids reject bad input") {
  CHECK_THROWS_AS(TimeGrid::uniform(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::uniform(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::alternating(-1.0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::decaying(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.1, 1.0}), std::invalid_argument);
}

TEST_CASE("build_grid dispatches on the rule name") {
  harness::GridSpec s;
  s.rule = "uniform";
  s.N = 100;
  CHECK(harness::build_grid(s, 1.0).num_steps() == 100);
  s.rule = "alt10";
  s.N = 180;
  CHECK(harness::build_grid(s, 1.0).max_step_ratio() == doctest::Approx(10.0).epsilon(1e-9));
  s.rule = "alt100";
  s.N = 196;
  CHECK(harness::build_grid(s, 1.0).max_step_ratio() == doctest::Approx(100.0).epsilon(1e-9));
  s.rule = "decay";
  s.tau0 = 0.01;
  CHECK(harness::build_grid(s, 1.0).final_time() == 1.0);
  s.rule = "bogus";
  CHECK_THROWS_AS(harness::build_grid(s, 1.0), std::invalid_argument);
  s.rule = "decay";
  s.tau0 = -1.0;
  CHECK_THROWS_AS(harness::build_grid(s, 1.0), std::invalid_argument);
}
