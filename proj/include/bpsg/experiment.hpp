#pragma once

#include <string>
#include <vector>

#include "bpsg/config.hpp"
#include "bpsg/metrics.hpp"
#include "bpsg/problems.hpp"
#include "bpsg/solver.hpp"

namespace bpsg {

struct ArmSummary {
  std::string name;
  double final_gap = 0.0;      // mean F(final) - F* across trajectories
  double final_rel_err = 0.0;  // gap / |F*|, or the gap itself when F* ~ 0
  double po_mean = 0.0;        // mean total prox calls per trajectory
  double sfo_mean = 0.0;       // mean total gradient draws per trajectory
  double seconds = 0.0;
  std::string csv_path;
};

struct ExperimentResult {
  double fstar = 0.0;
  bool fstar_certified = false;  // false for nonconvex problems
  bool fstar_near_zero = false;  // relative errors fall back to absolute
  std::vector<ArmSummary> arms;
  std::string script_path;
};

// Generates the problem instance from the config; the data stream is seeded
// from cfg.seed so every arm sees the same instance.
Problem build_problem(const ExperimentConfig& cfg);

// Column variances (linear ramp) whose lasso instance hits the requested
// L_max / L_mean ratio, found by bisection on the ramp endpoint.
std::vector<double> find_block_variances(const ExperimentConfig& cfg,
                                         double target_ratio);

// Base config plus one arm's overrides, resolved against the problem
// (steplengths parsed, batch_cap sentinel expanded).
SolverConfig arm_solver_config(const ExperimentConfig& cfg,
                               const ArmConfig& arm, const Problem& p);

// T runs with seeds base.seed + 0..T-1, optionally across threads. Results
// are indexed by trajectory, so aggregates do not depend on thread count.
std::vector<RunRecord> run_trajectories(const Problem& p,
                                        const SolverConfig& base, int T,
                                        int threads);

std::string arm_csv_path(const std::string& out, const std::string& arm_name);

void write_csv(const std::string& path, const std::vector<RunRecord>& records,
               double fstar);

// Reads back one column of an emitted CSV keyed by iteration; rows whose
// value is not finite (skipped metrics) are dropped.
std::vector<SeriesPoint> read_csv_column(const std::string& path,
                                         const std::string& column);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace bpsg
