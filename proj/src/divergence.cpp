#include "dmscout/divergence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dmscout {

void DMHyperparams::validate() const {
  if (!(beta > 0.0) || !(gamma >= 0.0) || !(h > 0.0) || !(sigma > 0.0) ||
      j_draws < 1) {
    throw std::invalid_argument("dm hyperparameters must be positive");
  }
}

Matrix entropy_gradient(const CholeskyFactor& L, double beta) {
  const int k = L.dim();
  Matrix g = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    const double d = L.matrix()(i, i);
    if (d < CholeskyFactor::kDiagFloor) {
      throw std::domain_error("entropy gradient: diagonal below floor");
    }
    g(i, i) = beta / d;
  }
  return g;
}

double objective_lower_bound(const TargetDistribution& target, const Vector& x,
                             const CholeskyFactor& L, double beta,
                             const std::vector<Vector>& eps_draws) {
  if (eps_draws.empty()) {
    throw std::invalid_argument("objective bound needs at least one draw");
  }
  const double logp_x = target.log_density(x);
  if (!std::isfinite(logp_x)) {
    throw std::domain_error("objective bound: non-finite log density at x");
  }
  double mean_logp = 0.0;
  double mean_min = 0.0;
  for (const Vector& eps : eps_draws) {
    const double logp_y = target.log_density(x + L.apply(eps));
    mean_logp += logp_y;
    mean_min += std::min(0.0, logp_y - logp_x);
  }
  const double j = static_cast<double>(eps_draws.size());
  return beta * L.gaussian_entropy() + beta * mean_logp / j + mean_min / j;
}

GradientEstimate estimate_gradient_with_draws(
    const TargetDistribution& target, const Vector& x, const CholeskyFactor& L,
    double beta, double h, const std::vector<Vector>& eps_draws) {
  if (eps_draws.empty()) {
    throw std::invalid_argument("gradient estimate needs at least one draw");
  }
  const int k = L.dim();
  const double logp_x = target.log_density(x);
  Matrix g = entropy_gradient(L, beta);

  const double inv_j = 1.0 / static_cast<double>(eps_draws.size());
  for (std::size_t j = 0; j < eps_draws.size(); ++j) {
    const Vector& eps = eps_draws[j];
    const Vector y = x + L.apply(eps);
    const double logp_y = target.log_density(y);
    const Vector grad_y = target.grad_log_density(y);
    for (int i = 0; i < k; ++i) {
      if (!std::isfinite(grad_y[i])) {
        std::ostringstream msg;
        msg << "gradient estimate: non-finite target gradient at draw " << j;
        throw std::runtime_error(msg.str());
      }
    }
    // Term 2 always contributes beta * grad; Term 3 adds a full extra grad
    // only when the proposal loses density (ties take the zero branch).
    const double coeff = (beta + (logp_y < logp_x ? 1.0 : 0.0)) * inv_j;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c <= r; ++c) {
        g(r, c) += coeff * grad_y[r] * eps[c];
      }
    }
  }

  GradientEstimate est;
  est.draws_used = static_cast<int>(eps_draws.size());
  est.clipped = (g.array().abs() > h);
  est.value = clip_gradient(g, h);
  return est;
}

GradientEstimate estimate_gradient(const TargetDistribution& target,
                                   const Vector& x, const CholeskyFactor& L,
                                   const DMHyperparams& hyper, Rng& grad_rng) {
  std::vector<Vector> draws;
  draws.reserve(hyper.j_draws);
  for (int j = 0; j < hyper.j_draws; ++j) {
    draws.push_back(grad_rng.normal_vector(L.dim()));
  }
  return estimate_gradient_with_draws(target, x, L, hyper.beta, hyper.h,
                                      draws);
}

Matrix clip_gradient(const Matrix& g, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("clip threshold must be positive");
  return g.array().min(h).max(-h).matrix();
}

CholeskyFactor update_cholesky(const CholeskyFactor& L, const Matrix& g,
                               double gamma) {
  if (g.rows() != L.dim() || g.cols() != L.dim()) {
    throw std::invalid_argument("cholesky update: shape mismatch");
  }
  Matrix next = L.matrix();
  next.triangularView<Eigen::Lower>() +=
      gamma * g.triangularView<Eigen::Lower>().toDenseMatrix();
  return CholeskyFactor(std::move(next));  // constructor floors the diagonal
}

}  // namespace dmscout
