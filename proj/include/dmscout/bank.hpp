#pragma once

#include <cstdint>
#include <vector>

#include "dmscout/cholesky.hpp"

namespace dmscout {

// Frozen set of (position, factor) pairs recorded during an adaptive phase.
// The non-adaptive phase proposes with the factor whose position is nearest
// to the current point; the bank never changes after construction, which is
// what makes the second phase a fixed-kernel Metropolis-Hastings chain.
class CholeskyBank {
 public:
  CholeskyBank(std::vector<Vector> positions,
               std::vector<CholeskyFactor> factors);

  int size() const { return static_cast<int>(positions_.size()); }
  const Vector& position(int i) const { return positions_[i]; }
  const CholeskyFactor& factor(int i) const { return factors_[i]; }

  // Index of the stored position closest to z in Euclidean distance.
  // Ties break toward the lowest stored index.
  int nearest_index(const Vector& z) const;

  const CholeskyFactor& nearest_factor(const Vector& z) const {
    return factors_[nearest_index(z)];
  }

  // FNV-1a over the raw bytes of all positions and factors; used by tests
  // to certify the bank did not change during the non-adaptive phase.
  std::uint64_t hash() const;

 private:
  std::vector<Vector> positions_;
  std::vector<CholeskyFactor> factors_;
};

}  // namespace dmscout
