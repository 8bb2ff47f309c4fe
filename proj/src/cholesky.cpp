#include "dmscout/cholesky.hpp"

#include <cmath>
#include <stdexcept>

namespace dmscout {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

CholeskyFactor::CholeskyFactor(Matrix lower) : entries_(std::move(lower)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("cholesky factor must be square");
  }
  const auto k = entries_.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (entries_(i, j) != 0.0) {
        throw std::invalid_argument(
            "cholesky factor has nonzero entry above the diagonal");
      }
    }
    if (!std::isfinite(entries_(i, i))) {
      throw std::invalid_argument("cholesky factor has non-finite diagonal");
    }
    if (entries_(i, i) < kDiagFloor) entries_(i, i) = kDiagFloor;
  }
}

CholeskyFactor CholeskyFactor::scaled_identity(int dim, double sigma) {
  return CholeskyFactor(Matrix(sigma * Matrix::Identity(dim, dim)));
}

Vector CholeskyFactor::solve(const Vector& v) const {
  return entries_.triangularView<Eigen::Lower>().solve(v);
}

double CholeskyFactor::log_det() const {
  return entries_.diagonal().array().log().sum();
}

double CholeskyFactor::gaussian_entropy() const {
  const double k = static_cast<double>(dim());
  return 0.5 * k * (kLog2Pi + 1.0) + log_det();
}

double CholeskyFactor::proposal_log_density(const Vector& point,
                                            const Vector& mean) const {
  const Vector z = solve(point - mean);
  return -0.5 * static_cast<double>(dim()) * kLog2Pi - log_det() -
         0.5 * z.squaredNorm();
}

}  // namespace dmscout
