#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmscout/samplers.hpp"
#include "dmscout/target.hpp"

namespace dmscout {

// Comparison metrics computed from one run. Every field mirrors a stable
// name in the serialized JSON report.
struct DiagnosticsReport {
  double acceptance_rate = 0.0;
  std::optional<double> scout_acceptance_rate;
  double esjd = 0.0;
  std::optional<double> mean_error;
  std::optional<double> second_moment_error;
  std::optional<std::vector<long>> mode_visits;
  std::optional<double> left_fraction;
  int n_used = 0;
};

// Mean squared jump distance over the retained rows:
// (1/(M-1)) sum_t ||x_t - x_{t-1}||^2. Throws std::invalid_argument unless
// at least two rows remain after burn-in.
double esjd(const Matrix& samples, int burn_in);

// Euclidean distance between empirical and declared moments. The mean error
// covers the leading block the target declares truth for; the second-moment
// error is present only when the target declares one.
std::pair<std::optional<double>, std::optional<double>> moment_errors(
    const Matrix& retained, const TargetDistribution& target);

// Count of retained samples within `radius` of each mode.
std::vector<long> mode_visits(const Matrix& retained,
                              const std::vector<Vector>& modes, double radius);

// Fraction of retained samples with a negative first coordinate.
double left_fraction(const Matrix& retained);

// Full report for one run at a given burn-in.
DiagnosticsReport summarize(const RunResult& result,
                            const TargetDistribution& target, int burn_in,
                            double mode_radius = 3.0);

}  // namespace dmscout
