#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace dmscout {

// splitmix64 step; used to derive well-separated seeds from one base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// mt19937_64 with explicit Box-Muller normals. Every normal draw consumes
// exactly two engine outputs and no state is cached between calls, so
// copying the engine snapshots the entire stream (needed for kernel
// replay tests).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Strictly inside (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Independent per-purpose streams for one chain run. Main-chain, scout and
// gradient noise are kept separate so that degeneration tests can hold one
// stream fixed while another is disabled.
struct RngStreams {
  Rng main;   // proposal noise + main-chain accept decisions
  Rng grad;   // Monte Carlo draws for gradient estimates
  Rng scout;  // scout-chain proposals + accept decisions
  Rng swap;   // swap decisions
  Rng bank;   // finite-phase subsample selection

  explicit RngStreams(std::uint64_t seed)
      : main(derive(seed, 0)),
        grad(derive(seed, 1)),
        scout(derive(seed, 2)),
        swap(derive(seed, 3)),
        bank(derive(seed, 4)) {}

 private:
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xa5a5a5a5a5a5a5a5ULL * (stream + 1));
    return splitmix64(state);
  }
};

}  // namespace dmscout
