#pragma once

#include <vector>

#include <Eigen/Core>

#include "dmscout/cholesky.hpp"
#include "dmscout/target.hpp"

namespace dmscout {

// Tunables of the divergence-minimization update. The clip threshold
// defaults to 10/gamma, matching the stated algorithm defaults.
struct DMHyperparams {
  double beta = 0.2;       // balance between divergence and acceptance terms
  double gamma = 0.002;    // gradient-ascent step size
  double h = 10.0 / 0.002; // entrywise gradient clip threshold
  double sigma = 2.0;      // initial proposal scaling (C_0 = sigma * I)
  int j_draws = 10;        // Monte Carlo draws per gradient estimate

  // Use the proposal's own noise vector as the single gradient draw instead
  // of fresh draws from a separate stream (the most literal pseudocode
  // reading; gradient noise then correlates with the proposal).
  bool reuse_proposal_eps = false;

  // Multiply gamma by 0.999 after each rejected proposal, floored at one
  // hundredth of the initial value. Off unless an experiment asks for it.
  bool shrink_gamma_on_reject = false;

  void validate() const;
};

// Stochastic estimate of the objective gradient with respect to the
// lower-triangular factor, after clipping.
struct GradientEstimate {
  Matrix value;  // lower-triangular, entries in [-h, h]
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> clipped;
  int draws_used = 0;

  bool any_clipped() const { return clipped.any(); }
};

// Exact entropy term of the gradient: beta * diag(1/L_11, ..., 1/L_kk).
// Throws std::domain_error if a diagonal entry sits below the factor floor.
Matrix entropy_gradient(const CholeskyFactor& L, double beta);

// Monte Carlo lower bound on the log objective at x:
//   beta*H_q + beta*mean_j log p(x + L eps_j)
//          + mean_j min{0, log p(x + L eps_j) - log p(x)}
// with H_q the closed-form Gaussian entropy of the proposal.
double objective_lower_bound(const TargetDistribution& target, const Vector& x,
                             const CholeskyFactor& L, double beta,
                             const std::vector<Vector>& eps_draws);

// Gradient estimate from explicit draws. Each draw contributes
// (beta + 1{log p(y_j) < log p(x)}) * grad_log_p(y_j) * eps_j^T averaged
// over draws and projected onto the lower triangle; the density-ratio
// products are always evaluated as gradients of the log density. Entries
// are clipped to +-h with per-entry flags.
GradientEstimate estimate_gradient_with_draws(
    const TargetDistribution& target, const Vector& x, const CholeskyFactor& L,
    double beta, double h, const std::vector<Vector>& eps_draws);

// Gradient estimate with hyper.j_draws fresh standard-normal draws.
GradientEstimate estimate_gradient(const TargetDistribution& target,
                                   const Vector& x, const CholeskyFactor& L,
                                   const DMHyperparams& hyper, Rng& grad_rng);

// Entrywise clamp to [-h, h].
Matrix clip_gradient(const Matrix& g, double h);

// L + gamma * lower(G), diagonal floored. Never fails.
CholeskyFactor update_cholesky(const CholeskyFactor& L, const Matrix& g,
                               double gamma);

}  // namespace dmscout
