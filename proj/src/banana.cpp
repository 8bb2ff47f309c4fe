#include "dmscout/targets/banana.hpp"

#include <cmath>
#include <stdexcept>

namespace dmscout {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

Eigen::Matrix2d rotation_matrix(double theta) {
  Eigen::Matrix2d r;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r << c, -s, s, c;
  return r;
}

}  // namespace

void BananaParams::validate() const {
  if (!(scale_x > 0.0) || !(scale_y > 0.0)) {
    throw std::invalid_argument("banana: scales must be positive");
  }
  if (translation.size() != 2) {
    throw std::invalid_argument("banana: translation must have dimension 2");
  }
  if (!std::isfinite(curvature) || !std::isfinite(rotation)) {
    throw std::invalid_argument("banana: non-finite parameter");
  }
}

double banana_log_density(const BananaParams& p, const Vector& x) {
  if (x.size() != 2) throw std::invalid_argument("banana: point must be 2D");
  check_finite(x, "banana point");
  const Eigen::Matrix2d rot = rotation_matrix(p.rotation);
  const Eigen::Vector2d w = rot.transpose() * (x - p.translation);
  const double z1 = w[0];
  const double z2 = w[1] + p.curvature * w[0] * w[0];
  return -0.5 * (z1 * z1 / (p.scale_x * p.scale_x) +
                 z2 * z2 / (p.scale_y * p.scale_y)) -
         kLog2Pi - std::log(p.scale_x) - std::log(p.scale_y);
}

Vector banana_grad_log_density(const BananaParams& p, const Vector& x) {
  if (x.size() != 2) throw std::invalid_argument("banana: point must be 2D");
  check_finite(x, "banana point");
  const Eigen::Matrix2d rot = rotation_matrix(p.rotation);
  const Eigen::Vector2d w = rot.transpose() * (x - p.translation);
  const double z1 = w[0];
  const double z2 = w[1] + p.curvature * w[0] * w[0];
  const double dz1 = -z1 / (p.scale_x * p.scale_x);
  const double dz2 = -z2 / (p.scale_y * p.scale_y);
  Eigen::Vector2d dw;
  dw[0] = dz1 + dz2 * 2.0 * p.curvature * w[0];
  dw[1] = dz2;
  return rot * dw;
}

Vector banana_direct_sample(const BananaParams& p, Rng& rng) {
  const double z1 = p.scale_x * rng.normal();
  const double z2 = p.scale_y * rng.normal();
  Eigen::Vector2d w(z1, z2 - p.curvature * z1 * z1);
  return rotation_matrix(p.rotation) * w + p.translation;
}

Vector banana_true_mean(const BananaParams& p) {
  const double apex_drop = p.curvature * p.scale_x * p.scale_x;
  Eigen::Vector2d mean_w(0.0, -apex_drop);
  return rotation_matrix(p.rotation) * mean_w + p.translation;
}

Vector banana_true_second_moment(const BananaParams& p) {
  // E[w w^T] is diagonal: Var(z1) and E[(z2 - b z1^2)^2] = s2^2 + 3 (b s1^2)^2.
  const double k = p.curvature * p.scale_x * p.scale_x;
  Eigen::Matrix2d mw = Eigen::Matrix2d::Zero();
  mw(0, 0) = p.scale_x * p.scale_x;
  mw(1, 1) = p.scale_y * p.scale_y + 3.0 * k * k;
  const Eigen::Matrix2d rot = rotation_matrix(p.rotation);
  const Eigen::Vector2d mu = rot * Eigen::Vector2d(0.0, -k);
  const Eigen::Vector2d t = p.translation;
  const Eigen::Matrix2d second = rot * mw * rot.transpose() +
                                 mu * t.transpose() + t * mu.transpose() +
                                 t * t.transpose();
  return second.diagonal();
}

BananaTarget::BananaTarget(BananaParams params) : params_(std::move(params)) {
  params_.validate();
}

DoubleBananaTarget::DoubleBananaTarget(BananaParams component,
                                       double reflection_line)
    : component_(std::move(component)), reflection_line_(reflection_line) {
  component_.validate();
  if (!std::isfinite(reflection_line_)) {
    throw std::invalid_argument("double banana: non-finite reflection line");
  }
}

Vector DoubleBananaTarget::mirror(const Vector& x) const {
  Vector m(2);
  m[0] = x[0];
  m[1] = 2.0 * reflection_line_ - x[1];
  return m;
}

double DoubleBananaTarget::log_density(const Vector& x) const {
  const double l1 = banana_log_density(component_, x);
  const double l2 = banana_log_density(component_, mirror(x));
  return log_sum_exp({l1, l2}) + std::log(0.5);
}

Vector DoubleBananaTarget::grad_log_density(const Vector& x) const {
  const double l1 = banana_log_density(component_, x);
  const double l2 = banana_log_density(component_, mirror(x));
  const double m = std::max(l1, l2);
  const double e1 = std::exp(l1 - m);
  const double e2 = std::exp(l2 - m);
  const double w1 = e1 / (e1 + e2);
  const double w2 = e2 / (e1 + e2);
  const Vector g1 = banana_grad_log_density(component_, x);
  Vector g2 = banana_grad_log_density(component_, mirror(x));
  g2[1] = -g2[1];  // chain rule through the reflection
  return w1 * g1 + w2 * g2;
}

std::optional<Vector> DoubleBananaTarget::true_mean() const {
  const Vector m1 = banana_true_mean(component_);
  Vector mean(2);
  mean[0] = m1[0];
  mean[1] = reflection_line_;
  return mean;
}

std::optional<Vector> DoubleBananaTarget::true_second_moment() const {
  const Vector m1 = banana_true_mean(component_);
  const Vector s1 = banana_true_second_moment(component_);
  Vector second(2);
  second[0] = s1[0];
  second[1] = s1[1] + 2.0 * reflection_line_ * reflection_line_ -
              2.0 * reflection_line_ * m1[1];
  return second;
}

std::optional<Vector> DoubleBananaTarget::direct_sample(Rng& rng) const {
  const bool second = rng.uniform() < 0.5;
  Vector draw = banana_direct_sample(component_, rng);
  return second ? mirror(draw) : draw;
}

std::vector<Vector> DoubleBananaTarget::modes() const {
  std::vector<Vector> out;
  const Vector apex1 = component_.translation;
  out.push_back(apex1);
  out.push_back(mirror(apex1));
  // Secondary modes at the tail intersections exist for the untransformed
  // component geometry with the reflection line below the apex.
  const bool plain = component_.rotation == 0.0 &&
                     component_.translation.isZero() &&
                     reflection_line_ < 0.0;
  if (plain && component_.curvature > 0.0) {
    const double xc = std::sqrt(-reflection_line_ / component_.curvature);
    Vector left(2), right(2);
    left << -xc, reflection_line_;
    right << xc, reflection_line_;
    out.push_back(left);
    out.push_back(right);
  }
  return out;
}

}  // namespace dmscout
