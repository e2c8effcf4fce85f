#include "bpsg/selection.hpp"

#include <limits>
#include <stdexcept>

namespace bpsg {

SelectionDist build_distribution(SelectionKind kind,
                                 const Eigen::VectorXd& L) {
  const int n = static_cast<int>(L.size());
  if (n < 1) throw std::invalid_argument("build_distribution: empty weights");
  SelectionDist d;
  if (kind == SelectionKind::uniform) {
    d.p = Eigen::VectorXd::Constant(n, 1.0 / n);
  } else {
    if ((L.array() <= 0.0).any())
      throw std::invalid_argument(
          "build_distribution: lipschitz weights must be > 0");
    d.p = L / L.sum();
  }
  d.cum.resize(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += d.p(i);
    d.cum[i] = acc;
  }
  d.cum[n - 1] = 1.0;  // guard against accumulated rounding
  return d;
}

int draw_block(const SelectionDist& dist, Rng& rng) {
  const double u = rng.uniform();
  const int n = static_cast<int>(dist.cum.size());
  for (int i = 0; i < n; ++i)
    if (u < dist.cum[i]) return i;
  return n - 1;
}

Eigen::VectorXd poisson_clock_frequencies(const Eigen::VectorXd& rates,
                                          double horizon, Rng& rng) {
  const int n = static_cast<int>(rates.size());
  if (n < 1) throw std::invalid_argument("poisson clocks: empty rate list");
  if ((rates.array() <= 0.0).any())
    throw std::invalid_argument("poisson clocks: rates must be > 0");
  if (!(horizon > 0.0))
    throw std::invalid_argument("poisson clocks: horizon must be > 0");

  Eigen::VectorXd next(n);
  for (int i = 0; i < n; ++i) next(i) = rng.exponential(rates(i));
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n);
  double total = 0.0;
  for (;;) {
    int winner = 0;  // ties (measure zero) fall to the lowest index
    for (int i = 1; i < n; ++i)
      if (next(i) < next(winner)) winner = i;
    if (next(winner) > horizon) break;
    counts(winner) += 1.0;
    total += 1.0;
    next(winner) += rng.exponential(rates(winner));
  }
  if (total == 0.0) return counts;
  return counts / total;
}

}  // namespace bpsg
