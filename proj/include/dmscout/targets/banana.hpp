#pragma once

#include "dmscout/target.hpp"

namespace dmscout {

// Planar banana density: a bivariate Gaussian N(0, diag(scale_x^2,
// scale_y^2)) pushed through the curvature map (z1, z2) -> (z1, z2 -
// curvature*z1^2), then rotated and translated. The map has unit Jacobian,
// so the density follows by plain change of variables and the closed-form
// mean is rot * (0, -curvature*scale_x^2) + translation.
struct BananaParams {
  double curvature = 0.067;
  double scale_x = 10.0;
  double scale_y = 1.0;
  double rotation = 0.0;  // radians, counterclockwise
  Vector translation = Vector::Zero(2);

  // Throws std::invalid_argument on non-positive scales.
  void validate() const;
};

// Free-function form used by tests; BananaTarget wraps these.
double banana_log_density(const BananaParams& params, const Vector& x);
Vector banana_grad_log_density(const BananaParams& params, const Vector& x);
Vector banana_direct_sample(const BananaParams& params, Rng& rng);
Vector banana_true_mean(const BananaParams& params);
Vector banana_true_second_moment(const BananaParams& params);

class BananaTarget : public TargetDistribution {
 public:
  explicit BananaTarget(BananaParams params = {});

  int dim() const override { return 2; }
  std::string name() const override { return "banana"; }

  double log_density(const Vector& x) const override {
    return banana_log_density(params_, x);
  }
  Vector grad_log_density(const Vector& x) const override {
    return banana_grad_log_density(params_, x);
  }

  std::optional<Vector> true_mean() const override {
    return banana_true_mean(params_);
  }
  std::optional<Vector> true_second_moment() const override {
    return banana_true_second_moment(params_);
  }
  std::optional<Vector> direct_sample(Rng& rng) const override {
    return banana_direct_sample(params_, rng);
  }
  std::vector<Vector> modes() const override { return {params_.translation}; }
  bool left_fraction_applicable() const override { return true; }

  const BananaParams& params() const { return params_; }

 private:
  BananaParams params_;
};

// Equal-weight mixture of one banana and its reflection through the
// horizontal line y = reflection_line. The reflection symmetry pins the
// mixture mean at (0, reflection_line) regardless of the banana shape;
// with the default geometry the component tails overlap near
// (+-sqrt(-reflection_line*... ), reflection_line), giving two secondary
// modes beside the two apexes.
class DoubleBananaTarget : public TargetDistribution {
 public:
  explicit DoubleBananaTarget(BananaParams component = {},
                              double reflection_line = -25.0);

  int dim() const override { return 2; }
  std::string name() const override { return "double_banana"; }

  double log_density(const Vector& x) const override;
  Vector grad_log_density(const Vector& x) const override;

  std::optional<Vector> true_mean() const override;
  std::optional<Vector> true_second_moment() const override;
  std::optional<Vector> direct_sample(Rng& rng) const override;
  std::vector<Vector> modes() const override;
  bool left_fraction_applicable() const override { return true; }

  double reflection_line() const { return reflection_line_; }
  const BananaParams& component() const { return component_; }

 private:
  Vector mirror(const Vector& x) const;

  BananaParams component_;
  double reflection_line_;
};

}  // namespace dmscout
