#pragma once

#include "dmscout/target.hpp"

namespace dmscout {

// Synthetic sparse-regression data: X has i.i.d. standard normal entries,
// y = X beta_true + standard normal noise. The leading half of beta_true
// follows the fixed decay pattern 10, 5, 2.5, 2, 1, 0.75, 0.5, 0.25, 0.2,
// 0.1 (truncated to p/2 entries); the trailing half is zero.
struct HorseshoeRegressionData {
  Matrix X;
  Vector y;
  Vector beta_true;

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }
};

// Deterministic in (seed, n, p); p must be even and positive.
HorseshoeRegressionData generate_horseshoe_data(std::uint64_t seed, int n,
                                                int p);

// Bayesian linear regression posterior with horseshoe priors:
//   y | X, beta, sigma ~ N(X beta, sigma^2 I)
//   beta_j ~ N(0, lambda_j^2 tau^2),  lambda_j, tau, sigma ~ half-Cauchy(0,1)
// The state packs (beta_1..beta_p, log lambda_1..log lambda_p, log tau,
// log sigma); every positive parameter lives on the log scale with its
// Jacobian term included, so the state space is unconstrained.
class HorseshoeRegressionTarget : public TargetDistribution {
 public:
  explicit HorseshoeRegressionTarget(HorseshoeRegressionData data);

  int dim() const override { return 2 * data_.p() + 2; }
  std::string name() const override { return "horseshoe"; }

  double log_density(const Vector& theta) const override;
  Vector grad_log_density(const Vector& theta) const override;

  // True regression coefficients; covers the leading p coordinates only.
  std::optional<Vector> true_mean() const override { return data_.beta_true; }

  // OLS coefficients for the coefficient block; the rest of the suggested
  // start sits at log-scale zero.
  Vector suggested_start() const override;

  // Gaussian log likelihood of y | X beta, sigma^2 alone (no priors).
  double log_likelihood(const Vector& beta, double sigma) const;

  Vector ols_estimate() const { return ols_; }
  const HorseshoeRegressionData& data() const { return data_; }

 private:
  void unpack(const Vector& theta, Vector& beta, Vector& log_lambda,
              double& log_tau, double& log_sigma) const;

  HorseshoeRegressionData data_;
  Vector ols_;
};

}  // namespace dmscout
