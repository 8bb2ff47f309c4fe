#pragma once

#include <Eigen/Core>

#include "dmscout/target.hpp"

namespace dmscout {

// Lower-triangular factor with a floored positive diagonal; L L^T is the
// proposal covariance. Additive gradient updates can push a diagonal entry
// toward zero or below, so the diagonal is clamped at kDiagFloor whenever a
// factor is formed.
class CholeskyFactor {
 public:
  static constexpr double kDiagFloor = 1e-6;

  // Throws std::invalid_argument if the matrix is not square or carries a
  // nonzero entry above the diagonal. Diagonal entries are floored.
  explicit CholeskyFactor(Matrix lower);

  static CholeskyFactor scaled_identity(int dim, double sigma);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  // L * eps
  Vector apply(const Vector& eps) const { return entries_ * eps; }

  // L^{-1} v by forward substitution.
  Vector solve(const Vector& v) const;

  // sum_i log L_ii
  double log_det() const;

  // Entropy of N(., L L^T): (k/2) log(2 pi e) + sum_i log L_ii.
  double gaussian_entropy() const;

  // log N(point | mean, L L^T)
  double proposal_log_density(const Vector& point, const Vector& mean) const;

 private:
  Matrix entries_;
};

}  // namespace dmscout
