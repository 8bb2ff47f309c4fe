#pragma once

#include "dmscout/target.hpp"

namespace dmscout {

// Equal-weight mixture of eight unit Gaussians centered at +-10 e_i in R^4.
// The mean sits at the origin where the density is negligible, so a sampler
// only recovers it by visiting the modes in a balanced way.
class BasisVectorTarget : public TargetDistribution {
 public:
  BasisVectorTarget();

  int dim() const override { return 4; }
  std::string name() const override { return "basis_vector_4d"; }

  double log_density(const Vector& x) const override;
  Vector grad_log_density(const Vector& x) const override;

  std::optional<Vector> true_mean() const override {
    return Vector(Vector::Zero(4));
  }
  std::optional<Vector> true_second_moment() const override;
  std::optional<Vector> direct_sample(Rng& rng) const override;
  std::vector<Vector> modes() const override { return centers_; }

 private:
  std::vector<Vector> centers_;
};

}  // namespace dmscout
