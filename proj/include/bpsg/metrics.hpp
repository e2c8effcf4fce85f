#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "bpsg/problems.hpp"
#include "bpsg/solver.hpp"

namespace bpsg {

struct GradientMapping {
  Eigen::VectorXd vec;            // full-length mapping
  Eigen::VectorXd block_norms_sq; // one entry per block
  double norm_sq = 0.0;
};

// G_i(x) = (x_i - prox_{a_i r_i}(x_i - a_i grad_i f(x))) / a_i with the exact
// expectation gradient; zero exactly at stationary points.
GradientMapping gradient_mapping(const Problem& p, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& alphas);

struct SeriesPoint {
  std::uint64_t k = 0;
  double value = 0.0;
};

// Running average of the squared mapping norm: value at K is the mean over
// trajectories of (1/(K+1)) sum_{k<=K} ||G(x(k))||^2. Needs every row to
// carry a mapping norm (metrics_stride 1). Trajectories are truncated to the
// shortest one.
std::vector<SeriesPoint> ergodic_gap(const std::vector<RunRecord>& records);

// Mean objective gap per iteration across trajectories.
std::vector<SeriesPoint> mean_gap(const std::vector<RunRecord>& records,
                                  double fstar);

enum class FitScale { loglog, semilog };

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

// Least-squares slope of log(value) against log(k) (loglog) or k (semilog)
// over window from <= k <= to. Values must be positive; loglog skips k = 0.
RateFit fit_rate(const std::vector<SeriesPoint>& series, std::uint64_t from,
                 std::uint64_t to, FitScale scale);

}  // namespace bpsg
