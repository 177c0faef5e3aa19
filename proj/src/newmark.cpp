#include "wavest/newmark.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavest::wave {

namespace {

constexpr std::size_t cache_size = 4;

std::vector<double> multiply(const CsrMatrix& a, std::span<const double> x, Exec exec) {
  std::vector<double> y(a.rows);
  kernels::spmv(a, x, y, exec);
  return y;
}

}  // namespace

void WaveProblem::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
}

void StateWindow::push(WaveState s) {
  if (!states_.empty() && !(s.t > states_.back().t))
    throw std::invalid_argument("window times must increase");
  states_.push_back(std::move(s));
  if (states_.size() > capacity) states_.pop_front();
}

void StateWindow::clear() { states_.clear(); }

const WaveState& StateWindow::back(std::size_t i) const {
  if (i >= states_.size()) throw std::out_of_range("state window too short");
  return states_[states_.size() - 1 - i];
}

double StateWindow::step_back(std::size_t i) const { return back(i).t - back(i + 1).t; }

NewmarkSolver::NewmarkSolver(const P1Space& space, WaveProblem problem)
    : space_(space), problem_(std::move(problem)) {
  problem_.validate();
}

Field NewmarkSolver::project_load(double t) const {
  if (!problem_.f) return space_.zero(FieldKind::l2);
  return l2_project(space_, [&](double x, double y) { return problem_.f(t, x, y); });
}

WaveState NewmarkSolver::initial_state() const {
  WaveState s;
  s.t = 0.0;
  s.u = problem_.grad_u0 ? h1_project(space_, problem_.grad_u0) : space_.zero(FieldKind::h10);
  s.v = problem_.grad_v0 ? h1_project(space_, problem_.grad_v0) : space_.zero(FieldKind::h10);
  s.f = project_load(0.0);
  return s;
}

const SpdSolver& NewmarkSolver::system(double tau) const {
  auto it = cache_.find(tau);
  if (it != cache_.end()) return *it->second;
  if (cache_.size() >= cache_size) {
    // Variable-step grids rarely revisit a step; drop everything.
    for (const auto& [key, solver] : cache_) {
      retired_.calls += solver->stats().calls;
      retired_.iterations += solver->stats().iterations;
    }
    cache_.clear();
  }
  const auto& opt = space_.options();
  auto a = csr_add_scaled(space_.mass_free(), space_.stiffness_free(), tau * tau / 4.0);
  auto solver = std::make_unique<SpdSolver>(std::move(a), opt.tol, opt.max_iter, opt.exec);
  return *cache_.emplace(tau, std::move(solver)).first->second;
}

SolverStats NewmarkSolver::system_stats() const {
  SolverStats s = retired_;
  for (const auto& [key, solver] : cache_) {
    s.calls += solver->stats().calls;
    s.iterations += solver->stats().iterations;
  }
  return s;
}

WaveState NewmarkSolver::step(const WaveState& s, double tau) const { return advance(s, tau, s.t + tau); }

WaveState NewmarkSolver::advance(const WaveState& s, double tau, double t_next) const {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
  space_.check(s.u);
  space_.check(s.v);
  space_.check(s.f);
  const Exec exec = space_.options().exec;
  const std::size_t nf = space_.num_free();

  WaveState next;
  next.t = t_next;
  next.f = project_load(next.t);

  const double q = tau * tau / 4.0;
  std::vector<double> w(nf), fsum(space_.num_all());
  for (std::size_t i = 0; i < nf; ++i) w[i] = s.u.values[i] + tau * s.v.values[i];
  for (std::size_t i = 0; i < fsum.size(); ++i) fsum[i] = s.f.values[i] + next.f.values[i];
  const auto mw = multiply(space_.mass_free(), w, exec);
  const auto ku = multiply(space_.stiffness_free(), s.u.values, exec);
  const auto mf = multiply(space_.mass_free_all(), fsum, exec);
  std::vector<double> rhs(nf);
  for (std::size_t i = 0; i < nf; ++i) rhs[i] = mw[i] - q * ku[i] + q * mf[i];

  next.u = space_.make(FieldKind::h10, system(tau).solve(rhs, w));
  std::vector<double> v(nf);
  for (std::size_t i = 0; i < nf; ++i)
    v[i] = 2.0 * (next.u.values[i] - s.u.values[i]) / tau - s.v.values[i];
  next.v = space_.make(FieldKind::h10, std::move(v));
  return next;
}

void NewmarkSolver::run(const TimeGrid& grid, const Callback& on_state) const {
  StateWindow window;
  WaveState s;
  try {
    s = initial_state();
  } catch (const SolverError& e) {
    throw SolverError(std::string("initial projection: ") + e.what(), e.residual(), e.iterations());
  }
  window.push(s);
  if (on_state) on_state(window, 0);
  for (std::size_t n = 0; n < grid.num_steps(); ++n) {
    try {
      s = advance(window.back(), grid.step(n), grid.time(n + 1));
    } catch (const SolverError& e) {
      throw SolverError("step " + std::to_string(n) + ": " + e.what(), e.residual(), e.iterations());
    }
    window.push(std::move(s));
    if (on_state) on_state(window, n + 1);
  }
}

double discrete_energy(const P1Space& space, const WaveState& s) {
  const double v = l2_norm(space, s.v);
  const double u = h1_seminorm(space, s.u);
  return 0.5 * (v * v + u * u);
}

double two_step_residual(const P1Space& space, const WaveState& prev, const WaveState& cur,
                         const WaveState& next) {
  const Exec exec = space.options().exec;
  const double tp = cur.t - prev.t;
  const double tn = next.t - cur.t;
  const std::size_t nf = space.num_free();
  std::vector<double> du(nf), su(nf), sf(space.num_all());
  for (std::size_t i = 0; i < nf; ++i) {
    du[i] = (next.u.values[i] - cur.u.values[i]) / tn - (cur.u.values[i] - prev.u.values[i]) / tp;
    su[i] = (tn * (next.u.values[i] + cur.u.values[i]) + tp * (cur.u.values[i] + prev.u.values[i])) / 4.0;
  }
  for (std::size_t i = 0; i < sf.size(); ++i)
    sf[i] = (tn * (next.f.values[i] + cur.f.values[i]) + tp * (cur.f.values[i] + prev.f.values[i])) / 4.0;
  const auto a = multiply(space.mass_free(), du, exec);
  const auto b = multiply(space.stiffness_free(), su, exec);
  const auto c = multiply(space.mass_free_all(), sf, exec);
  std::vector<double> r(nf);
  for (std::size_t i = 0; i < nf; ++i) r[i] = a[i] + b[i] - c[i];
  const double scale = kernels::norm2(a, exec) + kernels::norm2(b, exec) + kernels::norm2(c, exec);
  const double rn = kernels::norm2(r, exec);
  return scale > 0.0 ? rn / scale : rn;
}

}  // namespace wavest::wave
