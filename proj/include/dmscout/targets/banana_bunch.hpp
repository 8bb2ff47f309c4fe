#pragma once

#include "dmscout/target.hpp"

namespace dmscout {

// Equal-weight mixture of 12 planar bananas in R^3, four per coordinate
// plane. Each banana has its apex at +-40 on an in-plane axis and opens
// toward the origin, so apexes meet pairwise at the six points +-40 e_i and
// the 24 tails extend toward one another. The frozen shape constants were
// calibrated in closed form so the elementwise second moment is
// (400.32, 400.32, 400.32); the mean is the origin by symmetry.
class BananaBunchTarget : public TargetDistribution {
 public:
  static constexpr double kApex = 40.0;
  static constexpr double kCurvature = 0.1;
  static constexpr double kSpreadSigma = 11.5;
  static constexpr double kCrossSigma = 1.0;
  static constexpr double kOffPlaneSigma = 1.0;

  BananaBunchTarget();

  int dim() const override { return 3; }
  std::string name() const override { return "banana_bunch"; }

  double log_density(const Vector& x) const override;
  Vector grad_log_density(const Vector& x) const override;

  std::optional<Vector> true_mean() const override {
    return Vector(Vector::Zero(3));
  }
  std::optional<Vector> true_second_moment() const override;
  std::optional<Vector> direct_sample(Rng& rng) const override;
  std::vector<Vector> modes() const override;

 private:
  struct Component {
    int apex_axis;
    int spread_axis;
    int off_axis;
    double sign;
  };

  double component_log_density(const Component& c, const Vector& x) const;

  std::vector<Component> components_;
  double log_norm_;
};

}  // namespace dmscout
