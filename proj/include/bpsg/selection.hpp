#pragma once

#include <Eigen/Core>
#include <vector>

#include "bpsg/rng.hpp"

namespace bpsg {

enum class SelectionKind { uniform, lipschitz };

struct SelectionDist {
  Eigen::VectorXd p;
  std::vector<double> cum;  // inclusive prefix sums; cum.back() == 1 exactly
};

// uniform: p_i = 1/n. lipschitz: p_i = L_i / sum(L). Throws on nonpositive
// L_i under lipschitz or an empty L.
SelectionDist build_distribution(SelectionKind kind, const Eigen::VectorXd& L);

// Returns i with probability p_i (inverse CDF over the prefix sums).
int draw_block(const SelectionDist& dist, Rng& rng);

// Simulates n independent exponential-interarrival clocks until the horizon
// and returns the empirical firing frequencies. Simultaneous firings (never
// observed with continuous draws) would break toward the lowest index.
Eigen::VectorXd poisson_clock_frequencies(const Eigen::VectorXd& rates,
                                          double horizon, Rng& rng);

}  // namespace bpsg
