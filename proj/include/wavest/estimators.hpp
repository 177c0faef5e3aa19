#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wavest/differences.hpp"
#include "wavest/fem.hpp"
#include "wavest/newmark.hpp"

namespace wavest::est {

/// How the two norm terms a = |d2 v|_H1 and b (L2 term) are combined.
/// sqrt_squares: sqrt(a^2 + b^2) for both estimators.
/// paper_literal: sqrt(a + b^2) for the 3-point and a + b for the 5-point one.
enum class Payload { sqrt_squares, paper_literal };

double combine3(double h1, double l2, Payload p);
double combine5(double h1, double l2, Payload p);

/// Indicator at t_k. `eta3` / `eta5` already include `weight`; the estimate
/// sums tau_k * eta over k. Entries that do not apply are 0.
struct EstimatorSample {
  double t = 0.0;
  std::size_t k = 0;
  double tau = 0.0;
  double weight = 0.0;
  double eta3 = 0.0;
  double eta5 = 0.0;
};

/// The two norm terms of the 3-point indicator at k: |d2_k v|_H1 and
/// ||d2_k f - z^k||_L2 with M z^k = K d2_k u (one mass solve).
struct Eta3Terms {
  double h1 = 0.0;
  double l2 = 0.0;
};
Eta3Terms eta3_terms(const P1Space& space, const wave::WaveState& prev, const wave::WaveState& cur,
                     const wave::WaveState& next);

/// Interior 3-point indicator at k >= 1 from states k-1, k, k+1.
EstimatorSample eta3_step(const P1Space& space, const wave::WaveState& prev, const wave::WaveState& cur,
                          const wave::WaveState& next, Payload p = Payload::sqrt_squares);
/// Initial indicator eta_T(t_0): the k = 1 payload with weight
/// (5/12 tau_0^2 + 1/2 tau_0 tau_1). `s` holds the states at t_0, t_1, t_2.
EstimatorSample eta3_initial(const P1Space& space, const wave::WaveState& s0, const wave::WaveState& s1,
                             const wave::WaveState& s2, Payload p = Payload::sqrt_squares);

/// 5-point indicator at k >= 3. `u` holds u^{k-3} .. u^{k+1}; the v terms use
/// states k-1 .. k+1 of the same window. No linear solves.
EstimatorSample eta5_step(const P1Space& space, std::span<const wave::WaveState* const> window,
                          Payload p = Payload::sqrt_squares);

/// Jump n . (grad w|right - grad w|left) of a P1 function across an edge;
/// `all` holds one value per vertex.
double edge_jump(const Mesh& mesh, const InteriorEdge& e, std::span<const double> all);
/// ||[n . grad w]||^2_L2(E) = jump^2 h_E for the edge (a, b). Throws
/// std::invalid_argument for boundary or missing edges.
double edge_jump_norm(const Mesh& mesh, int a, int b, std::span<const double> all);

/// sum_E h_E ||[n . grad w]||^2_L2(E) over interior edges.
double edge_residual_sum(const Mesh& mesh, std::span<const double> all, Exec exec = Exec::parallel);
/// sum_K h_K^2 ||g||^2_L2(K) for a P1 function g given at every vertex.
double element_residual_sum(const Mesh& mesh, std::span<const double> g, Exec exec = Exec::parallel);

/// The bracket of the first space part at n: element residual of
/// d_n v - f^n plus edge jumps of u^n.
double space_part1_at(const P1Space& space, const wave::WaveState& prev, const wave::WaveState& cur,
                      const wave::WaveState& next);
/// The bracket of the second space part at n: element residual of
/// d2_n v - d_n f plus edge jumps of d_n u.
double space_part2_at(const P1Space& space, const wave::WaveState& prev, const wave::WaveState& cur,
                      const wave::WaveState& next);

struct SpaceParts {
  double s1 = 0.0;
  double s2 = 0.0;
  double total() const { return s1 + s2; }
};

/// Both space parts over a retained trajectory.
SpaceParts space_estimator_parts(const P1Space& space, std::span<const wave::WaveState> states);

/// Consumes states from NewmarkSolver::run and accumulates
///   eta_T     = sum_{k=0}^{N-1} tau_k eta_T(t_k)
///   eta_hat_T = sum_{k=3}^{N-1} tau_k eta_hat_T(t_k)
/// and both space parts.
class WaveEstimator {
 public:
  struct Options {
    bool eta3 = true;
    bool eta5 = true;
    bool space = true;
    Payload payload = Payload::sqrt_squares;
  };

  explicit WaveEstimator(const P1Space& space);
  WaveEstimator(const P1Space& space, Options options);

  void on_state(const wave::StateWindow& window, std::size_t n);

  double eta3_total() const { return eta3_; }
  double eta5_total() const { return eta5_; }
  SpaceParts space_parts() const { return space_parts_; }
  /// One sample per interior k; sample 0 is eta_T(t_0).
  const std::vector<EstimatorSample>& samples() const { return samples_; }
  /// Mass solves spent on z^k.
  std::size_t auxiliary_solves() const { return aux_solves_; }

 private:
  const P1Space& space_;
  Options opt_;
  double eta3_ = 0.0;
  double eta5_ = 0.0;
  SpaceParts space_parts_;
  std::vector<EstimatorSample> samples_;
  std::size_t aux_solves_ = 0;
};

}  // namespace wavest::est
