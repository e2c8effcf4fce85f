#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "bpsg/problems.hpp"
#include "bpsg/rng.hpp"

namespace bpsg {

struct GradientSample {
  Eigen::VectorXd grad;   // batch-averaged block gradient
  std::uint64_t draws;    // stochastic-oracle calls consumed
};

// Mini-batch block gradient. Sample-based problems draw `batch` indices
// uniformly with replacement; pl_quadratic draws the batch-mean noise
// directly (exactly N(0, sd^2/batch) per coordinate), still counting `batch`
// oracle calls. Unbiased for full_gradient_block in either case.
GradientSample sample_gradient_block(const Problem& p,
                                     const Eigen::VectorXd& x, int i,
                                     std::uint64_t batch, Rng& rng);

// Exact block gradient of the smooth term.
Eigen::VectorXd full_gradient_block(const Problem& p, const Eigen::VectorXd& x,
                                    int i);

// Exact gradient over all coordinates (one data pass; used by diagnostics).
Eigen::VectorXd full_gradient(const Problem& p, const Eigen::VectorXd& x);

// Single-sample block gradient for data index m (enumeration checks; invalid
// for pl_quadratic, which has no sample set).
Eigen::VectorXd index_gradient_block(const Problem& p, const Eigen::VectorXd& x,
                                     int i, int m);

// Empirical bound on E||w_i||^2 for single-sample gradients at x: the worst
// block's mean squared deviation over `draws` redraws. Feeds constant-batch
// sizing when a noise level is needed up front.
double estimate_sigma_sq(const Problem& p, const Eigen::VectorXd& x, int draws,
                         Rng& rng);

}  // namespace bpsg
