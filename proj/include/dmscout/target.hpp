#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dmscout/rng.hpp"

namespace dmscout {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Contract for a sampling target: log density with a hand-coded gradient,
// plus whatever ground truth the construction admits (moments, modes,
// direct draws) for diagnostics and oracle tests. Implementations are
// immutable after construction and safe to share across chains.
class TargetDistribution {
 public:
  virtual ~TargetDistribution() = default;

  virtual int dim() const = 0;
  virtual std::string name() const = 0;

  virtual double log_density(const Vector& x) const = 0;
  virtual Vector grad_log_density(const Vector& x) const = 0;

  // True first moment where known. May cover only the leading coordinates
  // (the horseshoe target declares truth for the regression block only);
  // moment diagnostics compare over the block it covers.
  virtual std::optional<Vector> true_mean() const { return std::nullopt; }

  // True elementwise second moment where known.
  virtual std::optional<Vector> true_second_moment() const {
    return std::nullopt;
  }

  // Exact draw from the target where the construction permits one.
  virtual std::optional<Vector> direct_sample(Rng&) const {
    return std::nullopt;
  }

  // Known mode locations, for visit counting on multimodal targets.
  virtual std::vector<Vector> modes() const { return {}; }

  // Whether the left-of-axis sample fraction is a meaningful statistic
  // (banana-family targets symmetric in the first coordinate).
  virtual bool left_fraction_applicable() const { return false; }

  // Start point used when a run config does not give one.
  virtual Vector suggested_start() const { return Vector::Zero(dim()); }
};

using TargetPtr = std::shared_ptr<const TargetDistribution>;

// Throws std::invalid_argument if any component of x is NaN or infinite.
void check_finite(const Vector& x, const char* what);

// log(sum_i exp(v_i)) with max subtraction; -inf for an empty list.
double log_sum_exp(const std::vector<double>& v);

}  // namespace dmscout
