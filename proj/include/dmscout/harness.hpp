#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmscout/diagnostics.hpp"
#include "dmscout/samplers.hpp"
#include "dmscout/target.hpp"

namespace dmscout {

// Raised for malformed configs and unknown target/sampler ids; the CLI maps
// it to exit code 2, before any run starts.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TargetSpec {
  std::string id;
  nlohmann::json params = nlohmann::json::object();
};

// One sampler row of an experiment. Overrides hold namespace objects
// (dm/scout/finite/rwm/arwm/mala/pt) merged over the config-wide values,
// which is how a preset runs pt with 2 and 5 chains side by side.
struct SamplerEntry {
  std::string id;
  std::string label;  // directory and report key; defaults to id
  nlohmann::json overrides = nlohmann::json::object();
};

struct ExportOptions {
  int sample_stride = 1;
  int cholesky_stride = 0;
  std::vector<std::array<int, 2>> projections;
  bool trace = false;
};

struct ExperimentConfig {
  TargetSpec target;
  std::vector<SamplerEntry> samplers;
  int iterations = 10000;
  int burn_in = 1000;
  std::uint64_t base_seed = 0;
  int replicates = 1;
  std::string out_dir = "out";
  std::optional<Vector> x0;
  double mode_radius = 3.0;
  DMHyperparams dm;
  ScoutParams scout;
  FiniteParams finite;
  RwmParams rwm;
  ArwmParams arwm;
  MalaParams mala;
  PtParams pt;
  ExportOptions exports;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_file(const std::string& path);
nlohmann::json serialize_config(const ExperimentConfig& config);

// Construct the target or throw ConfigError for an unknown id / bad params.
TargetPtr make_target(const TargetSpec& spec);

// Full dry-run validation: target and every sampler entry constructible,
// strides and replicate counts sane. Throws ConfigError.
void validate_config(const ExperimentConfig& config);

// SamplerConfig for one entry and seed, with entry overrides applied.
SamplerConfig build_sampler_config(const ExperimentConfig& config,
                                   const SamplerEntry& entry,
                                   std::uint64_t seed);

struct ReplicateOutput {
  int replicate = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::string dir;
  std::vector<std::string> files;
  DiagnosticsReport report;
  double wall_clock_seconds = 0.0;
};

struct SamplerOutput {
  std::string label;
  std::string id;
  std::vector<ReplicateOutput> replicates;
  // metric name -> (mean, sample sd) across successful replicates
  std::map<std::string, std::pair<double, double>> aggregate;
};

struct ExperimentOutput {
  bool ok = false;
  std::vector<SamplerOutput> samplers;
  std::vector<std::string> files;  // everything written, manifest last
};

// Executes every sampler entry for every replicate (replicates run
// concurrently), writes samples.csv / report.json per replicate plus the
// requested exports, an aggregate per sampler, a cross-sampler table when
// more than one entry runs, and manifest.json. Deterministic given seeds
// except for wall-clock fields.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// Exports; paths are returned as written. The trace export throws
// std::invalid_argument when no samples remain after burn-in.
std::string emit_samples_csv(const std::string& path, const RunResult& run,
                             int stride);
std::string emit_trace_csv(const std::string& path, const Matrix& samples,
                           int burn_in);
std::vector<std::string> emit_projection_csv(
    const std::string& dir, const RunResult& run, int burn_in,
    const std::vector<std::array<int, 2>>& pairs, int stride);

nlohmann::json report_to_json(const DiagnosticsReport& report);

}  // namespace dmscout
