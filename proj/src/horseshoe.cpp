#include "dmscout/targets/horseshoe.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace dmscout {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kLogTwoOverPi = -0.45158270528945486472619522989488;

double softplus(double t) { return t > 30.0 ? t : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// log density of half-Cauchy(0,1) evaluated at exp(u), plus the log-Jacobian
// of the log transform.
double log_half_cauchy_on_log_scale(double u) {
  return kLogTwoOverPi - softplus(2.0 * u) + u;
}

double d_log_half_cauchy_on_log_scale(double u) {
  return 1.0 - 2.0 * sigmoid(2.0 * u);
}

const double kCoefficientPattern[10] = {10.0, 5.0,  2.5,  2.0,  1.0,
                                        0.75, 0.5,  0.25, 0.2,  0.1};

}  // namespace

HorseshoeRegressionData generate_horseshoe_data(std::uint64_t seed, int n,
                                                int p) {
  if (n <= 0 || p <= 0) {
    throw std::invalid_argument("horseshoe data: n and p must be positive");
  }
  if (p % 2 != 0) {
    throw std::invalid_argument("horseshoe data: p must be even");
  }
  HorseshoeRegressionData data;
  data.beta_true = Vector::Zero(p);
  const int nonzero = std::min(p / 2, 10);
  for (int j = 0; j < nonzero; ++j) data.beta_true[j] = kCoefficientPattern[j];

  Rng rng(splitmix64(seed));
  data.X = Matrix(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) data.X(i, j) = rng.normal();
  }
  data.y = data.X * data.beta_true;
  for (int i = 0; i < n; ++i) data.y[i] += rng.normal();
  return data;
}

HorseshoeRegressionTarget::HorseshoeRegressionTarget(
    HorseshoeRegressionData data)
    : data_(std::move(data)) {
  if (data_.X.rows() != data_.y.size() ||
      data_.X.cols() != data_.beta_true.size()) {
    throw std::invalid_argument("horseshoe: inconsistent data shapes");
  }
  const Matrix xtx = data_.X.transpose() * data_.X;
  ols_ = xtx.ldlt().solve(data_.X.transpose() * data_.y);
}

void HorseshoeRegressionTarget::unpack(const Vector& theta, Vector& beta,
                                       Vector& log_lambda, double& log_tau,
                                       double& log_sigma) const {
  const int p = data_.p();
  if (theta.size() != 2 * p + 2) {
    throw std::invalid_argument("horseshoe: state dimension mismatch");
  }
  beta = theta.head(p);
  log_lambda = theta.segment(p, p);
  log_tau = theta[2 * p];
  log_sigma = theta[2 * p + 1];
}

double HorseshoeRegressionTarget::log_likelihood(const Vector& beta,
                                                 double sigma) const {
  const int n = data_.n();
  const double ssr = (data_.y - data_.X * beta).squaredNorm();
  return -0.5 * n * kLog2Pi - n * std::log(sigma) -
         ssr / (2.0 * sigma * sigma);
}

double HorseshoeRegressionTarget::log_density(const Vector& theta) const {
  check_finite(theta, "horseshoe state");
  Vector beta, log_lambda;
  double log_tau, log_sigma;
  unpack(theta, beta, log_lambda, log_tau, log_sigma);
  const int p = data_.p();
  const double sigma = std::exp(log_sigma);

  double lp = log_likelihood(beta, sigma);
  for (int j = 0; j < p; ++j) {
    // log N(beta_j | 0, lambda_j^2 tau^2), scales on log scale
    const double log_scale = log_lambda[j] + log_tau;
    lp += -0.5 * kLog2Pi - log_scale -
          0.5 * beta[j] * beta[j] * std::exp(-2.0 * log_scale);
    lp += log_half_cauchy_on_log_scale(log_lambda[j]);
  }
  lp += log_half_cauchy_on_log_scale(log_tau);
  lp += log_half_cauchy_on_log_scale(log_sigma);
  return lp;
}

Vector HorseshoeRegressionTarget::grad_log_density(const Vector& theta) const {
  check_finite(theta, "horseshoe state");
  Vector beta, log_lambda;
  double log_tau, log_sigma;
  unpack(theta, beta, log_lambda, log_tau, log_sigma);
  const int n = data_.n();
  const int p = data_.p();
  const double sigma = std::exp(log_sigma);
  const double inv_sigma_sq = std::exp(-2.0 * log_sigma);

  const Vector residual = data_.y - data_.X * beta;
  const Vector xtr = data_.X.transpose() * residual;

  Vector grad(2 * p + 2);
  double d_log_tau = d_log_half_cauchy_on_log_scale(log_tau);
  for (int j = 0; j < p; ++j) {
    const double inv_scale_sq = std::exp(-2.0 * (log_lambda[j] + log_tau));
    const double shrink = beta[j] * beta[j] * inv_scale_sq;
    grad[j] = xtr[j] * inv_sigma_sq - beta[j] * inv_scale_sq;
    grad[p + j] = shrink - 1.0 + d_log_half_cauchy_on_log_scale(log_lambda[j]);
    d_log_tau += shrink - 1.0;
  }
  grad[2 * p] = d_log_tau;
  grad[2 * p + 1] = -n + residual.squaredNorm() * inv_sigma_sq +
                    d_log_half_cauchy_on_log_scale(log_sigma);
  return grad;
}

Vector HorseshoeRegressionTarget::suggested_start() const {
  Vector start = Vector::Zero(dim());
  start.head(data_.p()) = ols_;
  return start;
}

}  // namespace dmscout
