#include "dmscout/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace dmscout {

double esjd(const Matrix& samples, int burn_in) {
  if (burn_in < 0) throw std::invalid_argument("esjd: negative burn-in");
  const Eigen::Index rows = samples.rows() - burn_in;
  if (rows < 2) {
    throw std::invalid_argument("esjd needs at least two retained samples");
  }
  double acc = 0.0;
  for (Eigen::Index t = burn_in + 1; t < samples.rows(); ++t) {
    acc += (samples.row(t) - samples.row(t - 1)).squaredNorm();
  }
  return acc / static_cast<double>(rows - 1);
}

std::pair<std::optional<double>, std::optional<double>> moment_errors(
    const Matrix& retained, const TargetDistribution& target) {
  if (retained.rows() == 0) {
    throw std::invalid_argument("moment errors need at least one sample");
  }
  std::optional<double> mean_err;
  std::optional<double> second_err;
  if (const auto truth = target.true_mean()) {
    const Eigen::Index block = truth->size();
    const Vector empirical = retained.leftCols(block).colwise().mean();
    mean_err = (empirical - *truth).norm();
  }
  if (const auto truth = target.true_second_moment()) {
    const Eigen::Index block = truth->size();
    const Vector empirical =
        retained.leftCols(block).array().square().colwise().mean();
    second_err = (empirical - *truth).norm();
  }
  return {mean_err, second_err};
}

std::vector<long> mode_visits(const Matrix& retained,
                              const std::vector<Vector>& modes,
                              double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("mode visit radius must be positive");
  }
  std::vector<long> counts(modes.size(), 0);
  for (Eigen::Index t = 0; t < retained.rows(); ++t) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      if ((retained.row(t).transpose() - modes[m]).norm() <= radius) {
        ++counts[m];
      }
    }
  }
  return counts;
}

double left_fraction(const Matrix& retained) {
  if (retained.rows() == 0 || retained.cols() < 1) {
    throw std::invalid_argument("left fraction needs samples with dim >= 1");
  }
  long count = 0;
  for (Eigen::Index t = 0; t < retained.rows(); ++t) {
    if (retained(t, 0) < 0.0) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(retained.rows());
}

DiagnosticsReport summarize(const RunResult& result,
                            const TargetDistribution& target, int burn_in,
                            double mode_radius) {
  const Eigen::Index rows = result.samples.rows();
  if (burn_in < 0 || burn_in >= rows) {
    throw std::invalid_argument("summarize: burn-in outside the run");
  }
  const Matrix retained =
      result.samples.bottomRows(rows - burn_in);

  DiagnosticsReport report;
  report.n_used = static_cast<int>(retained.rows());

  long accepted = 0;
  for (Eigen::Index t = burn_in; t < rows; ++t) {
    accepted += result.accepted[static_cast<std::size_t>(t)];
  }
  report.acceptance_rate =
      static_cast<double>(accepted) / static_cast<double>(report.n_used);

  if (!result.scout_accepted.empty()) {
    long scout_acc = 0;
    for (Eigen::Index t = burn_in; t < rows; ++t) {
      scout_acc += result.scout_accepted[static_cast<std::size_t>(t)];
    }
    report.scout_acceptance_rate =
        static_cast<double>(scout_acc) / static_cast<double>(report.n_used);
  }

  report.esjd = esjd(result.samples, burn_in);
  const auto [mean_err, second_err] = moment_errors(retained, target);
  report.mean_error = mean_err;
  report.second_moment_error = second_err;

  const auto modes = target.modes();
  if (modes.size() > 1) {
    report.mode_visits = mode_visits(retained, modes, mode_radius);
  }
  if (target.left_fraction_applicable()) {
    report.left_fraction = left_fraction(retained);
  }
  return report;
}

}  // namespace dmscout
