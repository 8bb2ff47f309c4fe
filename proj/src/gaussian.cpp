#include "dmscout/targets/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace dmscout {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

GaussianTarget::GaussianTarget(Vector mean, Vector var_diag)
    : mean_(std::move(mean)), var_(std::move(var_diag)) {
  if (mean_.size() != var_.size() || mean_.size() == 0) {
    throw std::invalid_argument("gaussian: mean/variance size mismatch");
  }
  if ((var_.array() <= 0.0).any()) {
    throw std::invalid_argument("gaussian: variances must be positive");
  }
  log_norm_ = -0.5 * static_cast<double>(mean_.size()) * kLog2Pi -
              0.5 * var_.array().log().sum();
}

GaussianTarget GaussianTarget::standard(int dim) {
  return GaussianTarget(Vector::Zero(dim), Vector::Ones(dim));
}

double GaussianTarget::log_density(const Vector& x) const {
  check_finite(x, "gaussian point");
  return log_norm_ -
         0.5 * ((x - mean_).array().square() / var_.array()).sum();
}

Vector GaussianTarget::grad_log_density(const Vector& x) const {
  check_finite(x, "gaussian point");
  return -((x - mean_).array() / var_.array()).matrix();
}

std::optional<Vector> GaussianTarget::true_second_moment() const {
  return Vector(mean_.array().square() + var_.array());
}

std::optional<Vector> GaussianTarget::direct_sample(Rng& rng) const {
  Vector z = rng.normal_vector(mean_.size());
  return Vector(mean_.array() + var_.array().sqrt() * z.array());
}

}  // namespace dmscout
