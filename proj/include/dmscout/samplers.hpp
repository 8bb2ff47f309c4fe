#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmscout/bank.hpp"
#include "dmscout/divergence.hpp"
#include "dmscout/target.hpp"

namespace dmscout {

enum class SamplerId {
  kRwm,
  kArwm,
  kMala,
  kPt,
  kDm,
  kDmFinite,
  kScout,
  kScoutFinite,
};

// Throws std::invalid_argument on an unknown id.
SamplerId sampler_id_from_string(const std::string& id);
std::string to_string(SamplerId id);
bool sampler_needs_gradient(SamplerId id);

struct ScoutParams {
  double tau = 0.1;     // tempering exponent of the scout chain
  double sigma_s = 9.0; // scout proposal scale (std dev per coordinate)
  int swap_every = 20;  // attempt a swap when t % swap_every == 0; <=0 never
};

struct FiniteParams {
  int threshold = 0;  // F; 0 picks iterations/2
  int subsample = 0;  // s; 0 picks iterations/20
};

struct RwmParams {
  double sigma = 1.0;  // proposal std dev per coordinate
};

struct ArwmParams {
  double epsilon_reg = 0.01;  // added to the scaled empirical covariance
  double warm_sigma = 0.0;    // warm-start proposal std dev; 0 -> 0.1/sqrt(d)
  int warm_iters = 0;         // fixed-kernel warm start length; 0 -> 2d
};

struct MalaParams {
  double step = 0.2;  // lambda; drift is (lambda^2/2) grad, noise lambda
};

struct PtParams {
  int chains = 2;
  double tau_min = 0.1;  // hottest tempering exponent of the geometric ladder
  double sigma = 1.0;    // cold-chain proposal std dev; chain i uses
                         // sigma/sqrt(tau_i)
};

struct SamplerConfig {
  SamplerId id = SamplerId::kDm;
  int iterations = 10000;  // M; one recorded sample per iteration
  int burn_in = 1000;      // applied at diagnostics time only
  Vector x0;               // empty -> target.suggested_start()
  std::uint64_t seed = 0;
  DMHyperparams dm;
  ScoutParams scout;
  FiniteParams finite;
  RwmParams rwm;
  ArwmParams arwm;
  MalaParams mala;
  PtParams pt;
  int cholesky_stride = 0;  // record C_t every stride iterations; 0 = never

  void validate() const;
};

struct SwapEvent {
  int iteration = 0;
  bool accepted = false;
};

// Everything one chain run produces. Samples are retained in full; burn-in
// is applied when diagnostics are computed so one result can serve several
// analyses.
struct RunResult {
  Matrix samples;  // iterations x dim, row t = state after iteration t
  std::vector<std::uint8_t> accepted;        // main chain, one flag per row
  std::vector<std::uint8_t> scout_accepted;  // scout runs only
  Matrix scout_samples;                      // scout runs only
  std::vector<SwapEvent> swap_events;
  std::vector<std::pair<int, Matrix>> cholesky_snapshots;
  std::uint64_t bank_hash_phase2_start = 0;  // finite runs only
  std::uint64_t bank_hash_phase2_end = 0;
  std::optional<CholeskyBank> bank;          // finite runs only
  int finite_threshold = -1;                 // finite runs only
  Matrix final_factor;  // adapted C at the end of the run, when one exists
  double wall_clock_seconds = 0.0;
  std::uint64_t seed = 0;
  SamplerId sampler = SamplerId::kDm;
};

// Resolved (threshold F, subsample s) for finite-adaptation runs; zeros in
// the config pick the defaults M/2 and M/20. Throws std::invalid_argument
// unless 0 < F < M and 0 < s <= F.
std::pair<int, int> resolve_finite_params(const SamplerConfig& config);

// Accepts with probability min{1, exp(log_ratio)}; consumes one uniform
// only when the ratio is below one.
bool accept_log_ratio(double log_ratio, Rng& rng);

// Metropolis rule min{1, p(y)/p(x)}, evaluated in log space.
bool metropolis_accept(const TargetDistribution& target, const Vector& x,
                       const Vector& y, Rng& rng);

// log alpha_f for the finite phase: min{0, [log p(y) + log q(x|y)] -
// [log p(x) + log q(y|x)]} with q built from the two bank factors.
double finite_log_alpha(const TargetDistribution& target, const Vector& x,
                        const Vector& y, const CholeskyFactor& factor_x,
                        const CholeskyFactor& factor_y);

// One non-adaptive-phase step: propose with the factor nearest x, score the
// reverse move with the factor nearest the proposal, accept by alpha_f.
// Updates x/logp_x in place and returns the accept decision. Deterministic
// in (x, rng state) given a frozen bank.
bool finite_phase_step(const TargetDistribution& target,
                       const CholeskyBank& bank, Vector& x, double& logp_x,
                       Rng& rng);

RunResult run_dm_perpetual(const TargetDistribution& target,
                           const SamplerConfig& config);
RunResult run_dm_finite(const TargetDistribution& target,
                        const SamplerConfig& config);
RunResult run_scout_perpetual(const TargetDistribution& target,
                              const SamplerConfig& config);
RunResult run_scout_finite(const TargetDistribution& target,
                           const SamplerConfig& config);
RunResult run_rwm(const TargetDistribution& target,
                  const SamplerConfig& config);
RunResult run_arwm(const TargetDistribution& target,
                   const SamplerConfig& config);
RunResult run_mala(const TargetDistribution& target,
                   const SamplerConfig& config);
RunResult run_pt(const TargetDistribution& target,
                 const SamplerConfig& config);

// Dispatch on config.id.
RunResult run_sampler(const TargetDistribution& target,
                      const SamplerConfig& config);

}  // namespace dmscout
