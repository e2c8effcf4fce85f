#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bpsg {

// Per-arm overrides of the base run settings. Empty strings, delay_max = -1
// and batch = 0 mean "inherit from the base config".
struct ArmConfig {
  std::string name;
  std::string schedule;
  std::string steplength;
  std::string selection;
  std::string clock;
  std::string batch_cap;
  int delay_max = -1;
  std::string algo;          // "" = block method, "bsg" = fixed-batch baseline
  std::uint64_t batch = 0;   // bsg minibatch size

  friend bool operator==(const ArmConfig&, const ArmConfig&) = default;
};

struct ExperimentConfig {
  // problem construction
  std::string problem = "lasso";  // lasso | sigmoid | pl_quadratic
  std::string data;               // libsvm path (sigmoid); empty = synthetic
  int samples = 1000;
  int dim = 400;
  int blocks = 10;
  double density = 0.1;
  double noise_sd = 0.01;
  double lambda = 0.1;
  std::string block_variances;    // comma-separated per-block column variances
  double target_lip_ratio = 0.0;  // > 0: search variances for L_max/L_ave
  double pl_mu = 1.0;
  double pl_spread = 4.0;
  double pl_noise_sd = 0.005;
  double pl_target_sd = 1.0;

  // base run settings
  std::string steplength = "quarter_inverse";
  std::string schedule = "constant:1";
  std::string selection = "uniform";
  std::string clock = "local";      // local | global
  std::string batch_cap = "none";   // none | dataset | positive integer
  int delay_max = 0;
  std::uint64_t budget_iterations = 0;  // exactly one budget may be set
  std::uint64_t budget_epochs = 0;

  // orchestration
  std::uint64_t seed = 1;
  int trajectories = 1;
  int metrics_stride = 1;
  double opt_tol = 1e-10;
  int threads = 0;  // 0 = hardware concurrency
  std::string out = "results.csv";

  std::vector<ArmConfig> arms;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) =
      default;
};

// Flat key=value text with # comments and optional double quotes around
// values. Unknown or duplicate keys are rejected by name.
ExperimentConfig parse_config(const std::string& text);

// Canonical form: parse(serialize(cfg)) == cfg for any valid config.
std::string serialize_config(const ExperimentConfig& cfg);

// Applies a single "key=value" assignment on top of an existing config.
// Setting one budget key clears the other.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Throws invalid_argument naming the offending key.
void validate_config(const ExperimentConfig& cfg);

ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

std::vector<double> parse_variance_list(const std::string& text);

}  // namespace bpsg
