#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "bpsg/oracles.hpp"
#include "bpsg/problems.hpp"
#include "bpsg/rng.hpp"
#include "bpsg/schedules.hpp"
#include "bpsg/selection.hpp"

namespace bpsg {

enum class StepKind {
  quarter_inverse,
  pl_optimal,
  inverse,
  inverse_fraction,
  fixed,
  global_fraction
};

// quarter_inverse: 1/(4 L_i). pl_optimal: (2-sqrt(3))/L_i. inverse: 1/L_i.
// inverse_fraction:c scales per block as c / L_i. fixed:v shares v across
// blocks. global_fraction:c uses c / L(full gradient).
struct SteplengthRule {
  StepKind kind = StepKind::quarter_inverse;
  double value = 0.0;  // inverse_fraction / fixed / global_fraction parameter

  friend bool operator==(const SteplengthRule&, const SteplengthRule&) = default;
};

SteplengthRule parse_steplength(const std::string& spec);
std::string format_steplength(const SteplengthRule& rule);
Eigen::VectorXd resolve_steplengths(const SteplengthRule& rule,
                                    const Problem& p);

enum class ClockMode { local, global };

struct Budget {
  enum class Kind { iterations, epochs };
  Kind kind = Kind::iterations;
  std::uint64_t amount = 0;  // iterations may be 0 (record the start only)

  friend bool operator==(const Budget&, const Budget&) = default;
};

struct SolverConfig {
  SteplengthRule steplength;
  BatchPolicy schedule = constant_policy(1);
  SelectionKind selection = SelectionKind::uniform;
  int delay_max = 0;
  Budget budget;
  std::uint64_t seed = 0;
  ClockMode clock = ClockMode::local;   // which clock feeds the batch policy
  std::uint64_t batch_cap = 0;          // 0 = uncapped
  int metrics_stride = 1;               // 0 = skip gradient-mapping norms
};

struct IterRow {
  std::uint64_t k = 0;
  int block = -1;              // -1 on the initial row
  std::uint64_t batch = 0;     // oracle draws consumed this iteration
  std::uint64_t po_calls = 0;  // cumulative; equals k
  std::uint64_t sfo_calls = 0; // cumulative
  double objective = 0.0;      // F(x(k))
  double gmap_sq = 0.0;        // NaN when not computed at this row
};

struct RunRecord {
  std::vector<IterRow> rows;   // rows[0] is the initial state
  Eigen::VectorXd x_final;
};

// Immutable per-run context: resolved steplengths, selection distribution and
// per-block batch policies (geometric_pl expands to block-specific bases).
struct StepContext {
  Eigen::VectorXd alphas;
  SelectionDist dist;
  std::vector<BatchPolicy> block_policies;
  ClockMode clock = ClockMode::local;
  std::uint64_t batch_cap = 0;
  int delay_max = 0;
  int metrics_stride = 1;
};

// Incremental smooth-loss state for the current iterate (residuals for lasso,
// margins for sigmoid; pl_quadratic evaluates directly).
struct LossCache {
  Eigen::VectorXd resid;
  void init(const Problem& p, const Eigen::VectorXd& x);
  void update(const Problem& p, int i, const Eigen::VectorXd& old_block,
              const Eigen::VectorXd& new_block);
  double smooth(const Problem& p, const Eigen::VectorXd& x) const;
};

struct SolverState {
  Eigen::VectorXd x;
  BlockClocks clocks;
  std::uint64_t po = 0;
  std::uint64_t sfo = 0;
  Rng rng;
  std::vector<Eigen::VectorXd> ring;  // past iterates when delays are on
  LossCache cache;
  std::vector<double> regvals;
  double reg_total = 0.0;

  explicit SolverState(std::uint64_t seed) : rng(seed) {}
};

StepContext make_step_context(const Problem& p, const SolverConfig& cfg);
SolverState make_solver_state(const Problem& p, const SolverConfig& cfg,
                              const StepContext& ctx,
                              const Eigen::VectorXd& x0);

// One iteration: pick a block, read a (possibly delayed) base point, average
// a batch of sampled gradients there, apply the block prox step, bump clocks
// and counters. Throws a divergence error when the objective leaves the
// finite range.
IterRow async_vr_step(const Problem& p, const StepContext& ctx,
                      SolverState& state);

RunRecord run(const Problem& p, const SolverConfig& cfg);
RunRecord run(const Problem& p, const SolverConfig& cfg,
              const Eigen::VectorXd& x0);

// Fixed-batch baseline: constant batch m with one shared steplength.
RunRecord run_bsg(const Problem& p, std::uint64_t minibatch, double alpha,
                  Budget budget, std::uint64_t seed, int metrics_stride = 0);

struct ReferenceSolution {
  Eigen::VectorXd x;
  double fstar = 0.0;      // minimum objective seen
  bool converged = false;  // gradient-mapping norm reached tol
  bool certified = false;  // convex problem kind
  std::uint64_t iterations = 0;
  double gmap_norm = 0.0;
};

// Deterministic full-gradient proximal descent with alpha = 1/L(global),
// stopped at ||G(x)|| <= tol or 10^6 iterations.
ReferenceSolution reference_optimum(const Problem& p, double tol);

}  // namespace bpsg
