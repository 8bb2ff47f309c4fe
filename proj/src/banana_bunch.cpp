#include "dmscout/targets/banana_bunch.hpp"

#include <cmath>
#include <stdexcept>

namespace dmscout {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

BananaBunchTarget::BananaBunchTarget() {
  const int planes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& plane : planes) {
    const int off = 3 - plane[0] - plane[1];
    for (int a = 0; a < 2; ++a) {
      const int apex_axis = plane[a];
      const int spread_axis = plane[1 - a];
      for (double sign : {1.0, -1.0}) {
        components_.push_back({apex_axis, spread_axis, off, sign});
      }
    }
  }
  log_norm_ = -1.5 * kLog2Pi - std::log(kSpreadSigma) -
              std::log(kCrossSigma) - std::log(kOffPlaneSigma) -
              std::log(static_cast<double>(components_.size()));
}

double BananaBunchTarget::component_log_density(const Component& c,
                                                const Vector& x) const {
  const double u = x[c.spread_axis];
  const double v = c.sign * x[c.apex_axis] - kApex + kCurvature * u * u;
  const double w = x[c.off_axis];
  return -0.5 * (u * u / (kSpreadSigma * kSpreadSigma) +
                 v * v / (kCrossSigma * kCrossSigma) +
                 w * w / (kOffPlaneSigma * kOffPlaneSigma));
}

double BananaBunchTarget::log_density(const Vector& x) const {
  if (x.size() != 3) throw std::invalid_argument("banana bunch: point must be 3D");
  check_finite(x, "banana bunch point");
  std::vector<double> comps;
  comps.reserve(components_.size());
  for (const Component& c : components_) {
    comps.push_back(component_log_density(c, x));
  }
  return log_sum_exp(comps) + log_norm_;
}

Vector BananaBunchTarget::grad_log_density(const Vector& x) const {
  if (x.size() != 3) throw std::invalid_argument("banana bunch: point must be 3D");
  check_finite(x, "banana bunch point");
  std::vector<double> comps;
  comps.reserve(components_.size());
  for (const Component& c : components_) {
    comps.push_back(component_log_density(c, x));
  }
  const double lse = log_sum_exp(comps);
  Vector grad = Vector::Zero(3);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const Component& c = components_[i];
    const double weight = std::exp(comps[i] - lse);
    const double u = x[c.spread_axis];
    const double v = c.sign * x[c.apex_axis] - kApex + kCurvature * u * u;
    const double w = x[c.off_axis];
    grad[c.spread_axis] +=
        weight * (-u / (kSpreadSigma * kSpreadSigma) -
                  v / (kCrossSigma * kCrossSigma) * 2.0 * kCurvature * u);
    grad[c.apex_axis] += weight * (-v / (kCrossSigma * kCrossSigma) * c.sign);
    grad[c.off_axis] += weight * (-w / (kOffPlaneSigma * kOffPlaneSigma));
  }
  return grad;
}

std::optional<Vector> BananaBunchTarget::true_second_moment() const {
  // Along an apex axis the component second moment is
  //   E[(40 + z2 - b z1^2)^2] = 40^2 - 80 b s1^2 + 3 (b s1^2)^2 + s2^2;
  // averaging the 12 components gives (A + s1^2 + s3^2)/3 per coordinate.
  const double k = kCurvature * kSpreadSigma * kSpreadSigma;
  const double a = kApex * kApex - 2.0 * kApex * k + 3.0 * k * k +
                   kCrossSigma * kCrossSigma;
  const double m2 = (a + kSpreadSigma * kSpreadSigma +
                     kOffPlaneSigma * kOffPlaneSigma) /
                    3.0;
  return Vector(Vector::Constant(3, m2));
}

std::optional<Vector> BananaBunchTarget::direct_sample(Rng& rng) const {
  const auto pick = static_cast<std::size_t>(
      rng.uniform() * static_cast<double>(components_.size()));
  const Component& c =
      components_[std::min(pick, components_.size() - 1)];
  const double z1 = kSpreadSigma * rng.normal();
  const double z2 = kCrossSigma * rng.normal();
  const double w = kOffPlaneSigma * rng.normal();
  Vector x(3);
  x[c.spread_axis] = z1;
  x[c.apex_axis] = c.sign * (kApex + z2 - kCurvature * z1 * z1);
  x[c.off_axis] = w;
  return x;
}

std::vector<Vector> BananaBunchTarget::modes() const {
  std::vector<Vector> out;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vector m = Vector::Zero(3);
      m[axis] = sign * kApex;
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace dmscout
