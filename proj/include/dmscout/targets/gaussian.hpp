#pragma once

#include "dmscout/target.hpp"

namespace dmscout {

// Diagnostic Gaussian N(mean, diag(var)). Used by calibration tests and as
// the degeneration reference for fixed-kernel sanity checks.
class GaussianTarget : public TargetDistribution {
 public:
  GaussianTarget(Vector mean, Vector var_diag);

  static GaussianTarget standard(int dim);

  int dim() const override { return static_cast<int>(mean_.size()); }
  std::string name() const override { return "gaussian"; }

  double log_density(const Vector& x) const override;
  Vector grad_log_density(const Vector& x) const override;

  std::optional<Vector> true_mean() const override { return mean_; }
  std::optional<Vector> true_second_moment() const override;
  std::optional<Vector> direct_sample(Rng& rng) const override;
  std::vector<Vector> modes() const override { return {mean_}; }

 private:
  Vector mean_;
  Vector var_;
  double log_norm_;
};

}  // namespace dmscout
