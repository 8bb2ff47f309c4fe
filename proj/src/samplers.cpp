#include "dmscout/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace dmscout {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vector resolve_start(const TargetDistribution& target,
                     const SamplerConfig& cfg) {
  if (cfg.x0.size() == 0) return target.suggested_start();
  if (cfg.x0.size() != target.dim()) {
    throw std::invalid_argument("sampler start point has wrong dimension");
  }
  check_finite(cfg.x0, "start point");
  return cfg.x0;
}

[[noreturn]] void rethrow_with_iteration(const char* sampler, int t,
                                         const std::exception& e) {
  std::ostringstream msg;
  msg << sampler << ": iteration " << t << ": " << e.what();
  throw std::runtime_error(msg.str());
}

// Mutable pieces of one divergence-minimization main chain.
struct DmChain {
  Vector x;
  double logp;
  CholeskyFactor factor;
  double gamma_now;
  double gamma_floor;
};

// One Algorithm-1 iteration: propose y = x + C eps, estimate the objective
// gradient at the current point, Metropolis-accept, then update the factor.
// The factor adapts whether or not the proposal was accepted.
bool dm_main_step(const TargetDistribution& target, const DMHyperparams& hp,
                  DmChain& chain, Rng& main_rng, Rng& grad_rng) {
  const Vector eps = main_rng.normal_vector(target.dim());
  const Vector y = chain.x + chain.factor.apply(eps);

  GradientEstimate grad;
  const bool adapting = chain.gamma_now != 0.0;
  if (adapting) {
    if (hp.reuse_proposal_eps) {
      grad = estimate_gradient_with_draws(target, chain.x, chain.factor,
                                          hp.beta, hp.h, {eps});
    } else {
      grad = estimate_gradient(target, chain.x, chain.factor, hp, grad_rng);
    }
  }

  const double logp_y = target.log_density(y);
  const bool accepted = accept_log_ratio(logp_y - chain.logp, main_rng);
  if (accepted) {
    chain.x = y;
    chain.logp = logp_y;
  }
  if (adapting) {
    chain.factor = update_cholesky(chain.factor, grad.value, chain.gamma_now);
  }
  if (hp.shrink_gamma_on_reject && !accepted) {
    chain.gamma_now = std::max(chain.gamma_now * 0.999, chain.gamma_floor);
  }
  return accepted;
}

// s indices drawn uniformly without replacement from {0, ..., count-1},
// returned in ascending order so nearest-neighbor ties break toward the
// earliest adaptive-phase iteration.
std::vector<int> sample_indices_without_replacement(int count, int s,
                                                    Rng& rng) {
  std::vector<int> pool(count);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j =
        i + static_cast<int>(rng.uniform() * static_cast<double>(count - i));
    std::swap(pool[i], pool[std::min(j, count - 1)]);
  }
  pool.resize(s);
  std::sort(pool.begin(), pool.end());
  return pool;
}

struct ScoutChain {
  Vector s;
  double logp;
};

// Tempered random-walk step of the scout chain.
bool scout_step(const TargetDistribution& target, const ScoutParams& params,
                ScoutChain& scout, Rng& scout_rng) {
  const Vector c =
      scout.s + params.sigma_s * scout_rng.normal_vector(target.dim());
  const double logp_c = target.log_density(c);
  const bool accepted =
      accept_log_ratio(params.tau * (logp_c - scout.logp), scout_rng);
  if (accepted) {
    scout.s = c;
    scout.logp = logp_c;
  }
  return accepted;
}

// Swap rule min{1, p(s)^(1-tau) / p(x)^(1-tau)} expressed in log space.
bool swap_step(double tau, Vector& x, double& logp_x, Vector& s,
               double& logp_s, Rng& swap_rng) {
  const bool accepted =
      accept_log_ratio((1.0 - tau) * (logp_s - logp_x), swap_rng);
  if (accepted) {
    std::swap(x, s);
    std::swap(logp_x, logp_s);
  }
  return accepted;
}

}  // namespace

SamplerId sampler_id_from_string(const std::string& id) {
  if (id == "rwm") return SamplerId::kRwm;
  if (id == "arwm") return SamplerId::kArwm;
  if (id == "mala") return SamplerId::kMala;
  if (id == "pt") return SamplerId::kPt;
  if (id == "dm") return SamplerId::kDm;
  if (id == "dm_finite") return SamplerId::kDmFinite;
  if (id == "scout") return SamplerId::kScout;
  if (id == "scout_finite") return SamplerId::kScoutFinite;
  throw std::invalid_argument("unknown sampler id: " + id);
}

std::string to_string(SamplerId id) {
  switch (id) {
    case SamplerId::kRwm: return "rwm";
    case SamplerId::kArwm: return "arwm";
    case SamplerId::kMala: return "mala";
    case SamplerId::kPt: return "pt";
    case SamplerId::kDm: return "dm";
    case SamplerId::kDmFinite: return "dm_finite";
    case SamplerId::kScout: return "scout";
    case SamplerId::kScoutFinite: return "scout_finite";
  }
  throw std::logic_error("unreachable sampler id");
}

bool sampler_needs_gradient(SamplerId id) {
  switch (id) {
    case SamplerId::kMala:
    case SamplerId::kDm:
    case SamplerId::kDmFinite:
    case SamplerId::kScout:
    case SamplerId::kScoutFinite:
      return true;
    default:
      return false;
  }
}

void SamplerConfig::validate() const {
  if (iterations < 2) {
    throw std::invalid_argument("sampler needs at least two iterations");
  }
  if (burn_in < 0 || burn_in >= iterations) {
    throw std::invalid_argument("burn-in must satisfy 0 <= burn_in < iterations");
  }
  dm.validate();
  if (!(scout.tau > 0.0) || scout.tau > 1.0) {
    throw std::invalid_argument("scout temperature must lie in (0, 1]");
  }
  if (!(scout.sigma_s > 0.0)) {
    throw std::invalid_argument("scout scale must be positive");
  }
  if (!(rwm.sigma > 0.0) || !(pt.sigma > 0.0) || !(mala.step > 0.0)) {
    throw std::invalid_argument("proposal scales must be positive");
  }
  if (!(arwm.epsilon_reg > 0.0)) {
    throw std::invalid_argument("arwm regularization must be positive");
  }
  if (pt.chains < 1) {
    throw std::invalid_argument("pt needs at least one chain");
  }
  if (!(pt.tau_min > 0.0) || pt.tau_min > 1.0) {
    throw std::invalid_argument("pt hottest temperature must lie in (0, 1]");
  }
  if (cholesky_stride < 0) {
    throw std::invalid_argument("cholesky stride must be nonnegative");
  }
}

std::pair<int, int> resolve_finite_params(const SamplerConfig& config) {
  const int threshold = config.finite.threshold > 0 ? config.finite.threshold
                                                    : config.iterations / 2;
  const int subsample = config.finite.subsample > 0 ? config.finite.subsample
                                                    : config.iterations / 20;
  if (threshold <= 0 || threshold >= config.iterations) {
    throw std::invalid_argument(
        "finite adaptation threshold must satisfy 0 < F < iterations");
  }
  if (subsample <= 0 || subsample > threshold) {
    throw std::invalid_argument(
        "finite subsample size must satisfy 0 < s <= F");
  }
  return {threshold, subsample};
}

bool accept_log_ratio(double log_ratio, Rng& rng) {
  if (log_ratio >= 0.0) return true;
  return std::log(rng.uniform()) < log_ratio;
}

bool metropolis_accept(const TargetDistribution& target, const Vector& x,
                       const Vector& y, Rng& rng) {
  check_finite(x, "metropolis current point");
  check_finite(y, "metropolis proposal");
  return accept_log_ratio(target.log_density(y) - target.log_density(x), rng);
}

double finite_log_alpha(const TargetDistribution& target, const Vector& x,
                        const Vector& y, const CholeskyFactor& factor_x,
                        const CholeskyFactor& factor_y) {
  const double forward = factor_x.proposal_log_density(y, x);
  const double reverse = factor_y.proposal_log_density(x, y);
  const double ratio =
      target.log_density(y) + reverse - target.log_density(x) - forward;
  return std::min(0.0, ratio);
}

bool finite_phase_step(const TargetDistribution& target,
                       const CholeskyBank& bank, Vector& x, double& logp_x,
                       Rng& rng) {
  const CholeskyFactor& factor_x = bank.nearest_factor(x);
  const Vector eps = rng.normal_vector(target.dim());
  const Vector y = x + factor_x.apply(eps);
  const double logp_y = target.log_density(y);
  const CholeskyFactor& factor_y = bank.nearest_factor(y);
  const double ratio = logp_y + factor_y.proposal_log_density(x, y) -
                       logp_x - factor_x.proposal_log_density(y, x);
  const bool accepted = accept_log_ratio(ratio, rng);
  if (accepted) {
    x = y;
    logp_x = logp_y;
  }
  return accepted;
}

namespace {

RunResult run_dm_impl(const TargetDistribution& target,
                      const SamplerConfig& cfg, bool finite) {
  cfg.validate();
  const auto start_time = Clock::now();
  const int dim = target.dim();
  const int iterations = cfg.iterations;
  int threshold = iterations;  // adaptive through the whole run
  int subsample = 0;
  if (finite) resolve_finite(cfg, threshold, subsample);

  RngStreams streams(cfg.seed);
  RunResult out;
  out.sampler = finite ? SamplerId::kDmFinite : SamplerId::kDm;
  out.seed = cfg.seed;
  out.samples.resize(iterations, dim);
  out.accepted.resize(iterations);

  DmChain chain{resolve_start(target, cfg), 0.0,
                CholeskyFactor::scaled_identity(dim, cfg.dm.sigma),
                cfg.dm.gamma, cfg.dm.gamma / 100.0};
  chain.logp = target.log_density(chain.x);

  // The subsample only depends on (F, s, bank stream), so it can be fixed
  // up front and only the selected pairs kept.
  std::vector<int> picked;
  std::vector<Vector> bank_positions;
  std::vector<CholeskyFactor> bank_factors;
  if (finite) {
    picked = sample_indices_without_replacement(threshold + 1, subsample,
                                                streams.bank);
  }
  std::size_t next_pick = 0;
  const auto maybe_record_pair = [&](int t) {
    if (!finite) return;
    if (next_pick < picked.size() && picked[next_pick] == t) {
      bank_positions.push_back(chain.x);
      bank_factors.push_back(chain.factor);
      ++next_pick;
    }
  };

  for (int t = 0; t < threshold && t < iterations; ++t) {
    try {
      maybe_record_pair(t);
      out.accepted[t] = dm_main_step(target, cfg.dm, chain, streams.main,
                                     streams.grad) ? 1 : 0;
    } catch (const std::exception& e) {
      rethrow_with_iteration(finite ? "dm_finite" : "dm", t, e);
    }
    out.samples.row(t) = chain.x;
    if (cfg.cholesky_stride > 0 && t % cfg.cholesky_stride == 0) {
      out.cholesky_snapshots.emplace_back(t, chain.factor.matrix());
    }
  }

  if (finite) {
    maybe_record_pair(threshold);  // pair (x_F, C_F)
    CholeskyBank bank(std::move(bank_positions), std::move(bank_factors));
    out.bank_hash_phase2_start = bank.hash();
    for (int t = threshold; t < iterations; ++t) {
      try {
        out.accepted[t] =
            finite_phase_step(target, bank, chain.x, chain.logp, streams.main)
                ? 1
                : 0;
      } catch (const std::exception& e) {
        rethrow_with_iteration("dm_finite", t, e);
      }
      out.samples.row(t) = chain.x;
    }
    out.bank_hash_phase2_end = bank.hash();
    out.bank = std::move(bank);
    out.finite_threshold = threshold;
  }

  out.final_factor = chain.factor.matrix();
  out.wall_clock_seconds = elapsed_seconds(start_time);
  return out;
}

RunResult run_scout_impl(const TargetDistribution& target,
                         const SamplerConfig& cfg, bool finite) {
  cfg.validate();
  const auto start_time = Clock::now();
  const int dim = target.dim();
  const int iterations = cfg.iterations;
  int threshold = iterations;
  int subsample = 0;
  if (finite) resolve_finite(cfg, threshold, subsample);

  RngStreams streams(cfg.seed);
  RunResult out;
  out.sampler = finite ? SamplerId::kScoutFinite : SamplerId::kScout;
  out.seed = cfg.seed;
  out.samples.resize(iterations, dim);
  out.accepted.resize(iterations);
  out.scout_samples.resize(iterations, dim);
  out.scout_accepted.resize(iterations);

  DmChain chain{resolve_start(target, cfg), 0.0,
                CholeskyFactor::scaled_identity(dim, cfg.dm.sigma),
                cfg.dm.gamma, cfg.dm.gamma / 100.0};
  chain.logp = target.log_density(chain.x);
  ScoutChain scout{chain.x, chain.logp};

  std::vector<int> picked;
  std::vector<Vector> bank_positions;
  std::vector<CholeskyFactor> bank_factors;
  if (finite) {
    picked = sample_indices_without_replacement(threshold + 1, subsample,
                                                streams.bank);
  }
  std::size_t next_pick = 0;
  const auto maybe_record_pair = [&](int t) {
    if (!finite) return;
    if (next_pick < picked.size() && picked[next_pick] == t) {
      bank_positions.push_back(chain.x);
      bank_factors.push_back(chain.factor);
      ++next_pick;
    }
  };

  const auto scout_and_swap = [&](int t) {
    out.scout_accepted[t] =
        scout_step(target, cfg.scout, scout, streams.scout) ? 1 : 0;
    if (cfg.scout.swap_every > 0 && t % cfg.scout.swap_every == 0) {
      const bool swapped = swap_step(cfg.scout.tau, chain.x, chain.logp,
                                     scout.s, scout.logp, streams.swap);
      out.swap_events.push_back({t, swapped});
    }
  };

  // Adaptive phase (the whole run when not finite).
  for (int t = 0; t < threshold && t < iterations; ++t) {
    try {
      maybe_record_pair(t);
      out.accepted[t] = dm_main_step(target, cfg.dm, chain, streams.main,
                                     streams.grad) ? 1 : 0;
      scout_and_swap(t);
    } catch (const std::exception& e) {
      rethrow_with_iteration(finite ? "scout_finite" : "scout", t, e);
    }
    out.samples.row(t) = chain.x;
    out.scout_samples.row(t) = scout.s;
    if (cfg.cholesky_stride > 0 && t % cfg.cholesky_stride == 0) {
      out.cholesky_snapshots.emplace_back(t, chain.factor.matrix());
    }
  }

  if (finite) {
    maybe_record_pair(threshold);
    CholeskyBank bank(std::move(bank_positions), std::move(bank_factors));
    out.bank_hash_phase2_start = bank.hash();
    for (int t = threshold; t < iterations; ++t) {
      try {
        out.accepted[t] =
            finite_phase_step(target, bank, chain.x, chain.logp, streams.main)
                ? 1
                : 0;
        scout_and_swap(t);
      } catch (const std::exception& e) {
        rethrow_with_iteration("scout_finite", t, e);
      }
      out.samples.row(t) = chain.x;
      out.scout_samples.row(t) = scout.s;
    }
    out.bank_hash_phase2_end = bank.hash();
    out.bank = std::move(bank);
    out.finite_threshold = threshold;
  }

  out.final_factor = chain.factor.matrix();
  out.wall_clock_seconds = elapsed_seconds(start_time);
  return out;
}

}  // namespace

RunResult run_dm_perpetual(const TargetDistribution& target,
                           const SamplerConfig& config) {
  return run_dm_impl(target, config, /*finite=*/false);
}

RunResult run_dm_finite(const TargetDistribution& target,
                        const SamplerConfig& config) {
  return run_dm_impl(target, config, /*finite=*/true);
}

RunResult run_scout_perpetual(const TargetDistribution& target,
                              const SamplerConfig& config) {
  return run_scout_impl(target, config, /*finite=*/false);
}

RunResult run_scout_finite(const TargetDistribution& target,
                           const SamplerConfig& config) {
  return run_scout_impl(target, config, /*finite=*/true);
}

RunResult run_rwm(const TargetDistribution& target,
                  const SamplerConfig& cfg) {
  cfg.validate();
  const auto start_time = Clock::now();
  const int dim = target.dim();
  RngStreams streams(cfg.seed);
  RunResult out;
  out.sampler = SamplerId::kRwm;
  out.seed = cfg.seed;
  out.samples.resize(cfg.iterations, dim);
  out.accepted.resize(cfg.iterations);

  Vector x = resolve_start(target, cfg);
  double logp = target.log_density(x);
  for (int t = 0; t < cfg.iterations; ++t) {
    try {
      const Vector y = x + cfg.rwm.sigma * streams.main.normal_vector(dim);
      const double logp_y = target.log_density(y);
      const bool acc = accept_log_ratio(logp_y - logp, streams.main);
      if (acc) {
        x = y;
        logp = logp_y;
      }
      out.accepted[t] = acc ? 1 : 0;
    } catch (const std::exception& e) {
      rethrow_with_iteration("rwm", t, e);
    }
    out.samples.row(t) = x;
  }
  out.wall_clock_seconds = elapsed_seconds(start_time);
  return out;
}

RunResult run_arwm(const TargetDistribution& target,
                   const SamplerConfig& cfg) {
  cfg.validate();
  const auto start_time = Clock::now();
  const int dim = target.dim();
  const int warm_iters = cfg.arwm.warm_iters > 0 ? cfg.arwm.warm_iters
                                                 : 2 * dim;
  const double warm_sigma = cfg.arwm.warm_sigma > 0.0
                                ? cfg.arwm.warm_sigma
                                : 0.1 / std::sqrt(static_cast<double>(dim));
  const double scale = 2.38 * 2.38 / static_cast<double>(dim);

  RngStreams streams(cfg.seed);
  RunResult out;
  out.sampler = SamplerId::kArwm;
  out.seed = cfg.seed;
  out.samples.resize(cfg.iterations, dim);
  out.accepted.resize(cfg.iterations);

  Vector x = resolve_start(target, cfg);
  double logp = target.log_density(x);

  // Running mean / scatter of the chain itself (repeats included).
  double count = 1.0;
  Vector mean = x;
  Matrix scatter = Matrix::Zero(dim, dim);

  for (int t = 0; t < cfg.iterations; ++t) {
    try {
      Vector y;
      if (t < warm_iters || count < 2.0) {
        y = x + warm_sigma * streams.main.normal_vector(dim);
      } else {
        Matrix proposal_cov = scale * (scatter / (count - 1.0));
        proposal_cov.diagonal().array() += cfg.arwm.epsilon_reg;
        const Eigen::LLT<Matrix> llt(proposal_cov);
        y = x + llt.matrixL() * streams.main.normal_vector(dim);
      }
      const double logp_y = target.log_density(y);
      const bool acc = accept_log_ratio(logp_y - logp, streams.main);
      if (acc) {
        x = y;
        logp = logp_y;
      }
      out.accepted[t] = acc ? 1 : 0;
    } catch (const std::exception& e) {
      rethrow_with_iteration("arwm", t, e);
    }
    out.samples.row(t) = x;
    count += 1.0;
    const Vector delta = x - mean;
    mean += delta / count;
    scatter += delta * (x - mean).transpose();
  }
  out.wall_clock_seconds = elapsed_seconds(start_time);
  return out;
}

RunResult run_mala(const TargetDistribution& target,
                   const SamplerConfig& cfg) {
  cfg.validate();
  const auto start_time = Clock::now();
  const int dim = target.dim();
  const double step = cfg.mala.step;
  const double half_step_sq = 0.5 * step * step;

  RngStreams streams(cfg.seed);
  RunResult out;
  out.sampler = SamplerId::kMala;
  out.seed = cfg.seed;
  out.samples.resize(cfg.iterations, dim);
  out.accepted.resize(cfg.iterations);

  Vector x = resolve_start(target, cfg);
  double logp = target.log_density(x);
  Vector grad = target.grad_log_density(x);

  for (int t = 0; t < cfg.iterations; ++t) {
    try {
      const Vector forward_mean = x + half_step_sq * grad;
      const Vector y = forward_mean + step * streams.main.normal_vector(dim);
      const double logp_y = target.log_density(y);
      const Vector grad_y = target.grad_log_density(y);
      const Vector reverse_mean = y + half_step_sq * grad_y;
      const double log_q_forward =
          -(y - forward_mean).squaredNorm() / (2.0 * step * step);
      const double log_q_reverse =
          -(x - reverse_mean).squaredNorm() / (2.0 * step * step);
      const bool acc = accept_log_ratio(
          logp_y + log_q_reverse - logp - log_q_forward, streams.main);
      if (acc) {
        x = y;
        logp = logp_y;
        grad = grad_y;
      }
      out.accepted[t] = acc ? 1 : 0;
    } catch (const std::exception& e) {
      rethrow_with_iteration("mala", t, e);
    }
    out.samples.row(t) = x;
  }
  out.wall_clock_seconds = elapsed_seconds(start_time);
  return out;
}

RunResult run_pt(const TargetDistribution& target, const SamplerConfig& cfg) {
  cfg.validate();
  const auto start_time = Clock::now();
  const int dim = target.dim();
  const int n_chains = cfg.pt.chains;

  // Geometric ladder from 1 down to tau_min, cold chain first.
  std::vector<double> taus(n_chains, 1.0);
  for (int i = 1; i < n_chains; ++i) {
    taus[i] = std::pow(cfg.pt.tau_min,
                       static_cast<double>(i) /
                           static_cast<double>(n_chains - 1));
  }

  RngStreams streams(cfg.seed);
  RunResult out;
  out.sampler = SamplerId::kPt;
  out.seed = cfg.seed;
  out.samples.resize(cfg.iterations, dim);
  out.accepted.resize(cfg.iterations);

  std::vector<Vector> xs(n_chains, resolve_start(target, cfg));
  std::vector<double> logps(n_chains, target.log_density(xs[0]));

  for (int t = 0; t < cfg.iterations; ++t) {
    try {
      for (int i = 0; i < n_chains; ++i) {
        const double sigma_i = cfg.pt.sigma / std::sqrt(taus[i]);
        const Vector y = xs[i] + sigma_i * streams.main.normal_vector(dim);
        const double logp_y = target.log_density(y);
        const bool acc =
            accept_log_ratio(taus[i] * (logp_y - logps[i]), streams.main);
        if (acc) {
          xs[i] = y;
          logps[i] = logp_y;
        }
        if (i == 0) out.accepted[t] = acc ? 1 : 0;
      }
      if (n_chains >= 2) {
        // One swap attempt per iteration on a random adjacent pair.
        const int j = std::min(
            static_cast<int>(streams.swap.uniform() *
                             static_cast<double>(n_chains - 1)),
            n_chains - 2);
        const double log_ratio =
            (taus[j] - taus[j + 1]) * (logps[j + 1] - logps[j]);
        const bool swapped = accept_log_ratio(log_ratio, streams.swap);
        if (swapped) {
          std::swap(xs[j], xs[j + 1]);
          std::swap(logps[j], logps[j + 1]);
        }
        out.swap_events.push_back({t, swapped});
      }
    } catch (const std::exception& e) {
      rethrow_with_iteration("pt", t, e);
    }
    out.samples.row(t) = xs[0];
  }
  out.wall_clock_seconds = elapsed_seconds(start_time);
  return out;
}

RunResult run_sampler(const TargetDistribution& target,
                      const SamplerConfig& config) {
  switch (config.id) {
    case SamplerId::kRwm: return run_rwm(target, config);
    case SamplerId::kArwm: return run_arwm(target, config);
    case SamplerId::kMala: return run_mala(target, config);
    case SamplerId::kPt: return run_pt(target, config);
    case SamplerId::kDm: return run_dm_perpetual(target, config);
    case SamplerId::kDmFinite: return run_dm_finite(target, config);
    case SamplerId::kScout: return run_scout_perpetual(target, config);
    case SamplerId::kScoutFinite: return run_scout_finite(target, config);
  }
  throw std::logic_error("unreachable sampler id");
}

}  // namespace dmscout
