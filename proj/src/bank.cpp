#include "dmscout/bank.hpp"

#include <cstring>
#include <stdexcept>

namespace dmscout {

CholeskyBank::CholeskyBank(std::vector<Vector> positions,
                           std::vector<CholeskyFactor> factors)
    : positions_(std::move(positions)), factors_(std::move(factors)) {
  if (positions_.empty() || positions_.size() != factors_.size()) {
    throw std::invalid_argument("cholesky bank: empty or mismatched contents");
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i].size() != factors_[i].dim()) {
      throw std::invalid_argument("cholesky bank: dimension mismatch");
    }
  }
}

int CholeskyBank::nearest_index(const Vector& z) const {
  // Linear scan; bank sizes stay in the low thousands at paper scale.
  int best = 0;
  double best_dist = (positions_[0] - z).squaredNorm();
  for (std::size_t i = 1; i < positions_.size(); ++i) {
    const double d = (positions_[i] - z).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

namespace {

void fnv1a_bytes(std::uint64_t& state, const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    state ^= p[i];
    state *= 0x100000001b3ULL;
  }
}

}  // namespace

std::uint64_t CholeskyBank::hash() const {
  std::uint64_t state = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    fnv1a_bytes(state, positions_[i].data(),
                sizeof(double) * static_cast<std::size_t>(positions_[i].size()));
    const Matrix& m = factors_[i].matrix();
    fnv1a_bytes(state, m.data(),
                sizeof(double) * static_cast<std::size_t>(m.size()));
  }
  return state;
}

}  // namespace dmscout
