#include "dmscout/targets/basis_vector.hpp"

#include <cmath>

namespace dmscout {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kModeDistance = 10.0;
}  // namespace

BasisVectorTarget::BasisVectorTarget() {
  for (int axis = 0; axis < 4; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Vector c = Vector::Zero(4);
      c[axis] = sign * kModeDistance;
      centers_.push_back(std::move(c));
    }
  }
}

double BasisVectorTarget::log_density(const Vector& x) const {
  if (x.size() != 4) throw std::invalid_argument("basis vector: point must be 4D");
  check_finite(x, "basis vector point");
  std::vector<double> comps;
  comps.reserve(centers_.size());
  for (const Vector& c : centers_) {
    comps.push_back(-0.5 * (x - c).squaredNorm());
  }
  return log_sum_exp(comps) - 2.0 * kLog2Pi - std::log(8.0);
}

Vector BasisVectorTarget::grad_log_density(const Vector& x) const {
  if (x.size() != 4) throw std::invalid_argument("basis vector: point must be 4D");
  check_finite(x, "basis vector point");
  std::vector<double> comps;
  comps.reserve(centers_.size());
  for (const Vector& c : centers_) {
    comps.push_back(-0.5 * (x - c).squaredNorm());
  }
  const double lse = log_sum_exp(comps);
  Vector grad = Vector::Zero(4);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double w = std::exp(comps[i] - lse);
    grad += w * (centers_[i] - x);
  }
  return grad;
}

std::optional<Vector> BasisVectorTarget::true_second_moment() const {
  // Per coordinate: two components contribute 10^2 + 1, the other six 1.
  const double m2 = (2.0 * (kModeDistance * kModeDistance + 1.0) + 6.0) / 8.0;
  return Vector(Vector::Constant(4, m2));
}

std::optional<Vector> BasisVectorTarget::direct_sample(Rng& rng) const {
  const auto pick = static_cast<std::size_t>(rng.uniform() * 8.0);
  const Vector& c = centers_[std::min<std::size_t>(pick, 7)];
  return Vector(c + rng.normal_vector(4));
}

}  // namespace dmscout
