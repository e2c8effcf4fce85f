#pragma once

#include <Eigen/Core>

namespace bpsg {

enum class RegKind { zero, l1, box };

// One separable convex regularizer, attached to a single block.
struct Regularizer {
  RegKind kind = RegKind::zero;
  double lambda = 0.0;       // l1 weight
  Eigen::VectorXd lower;     // box bounds
  Eigen::VectorXd upper;
};

Regularizer zero_reg();
Regularizer l1_reg(double lambda);
Regularizer box_reg(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

// argmin_y { r(y) + ||y - x||^2 / (2 alpha) }. Throws on alpha <= 0 or a
// bounds/block dimension mismatch.
Eigen::VectorXd prox(const Regularizer& reg, const Eigen::VectorXd& x,
                     double alpha);

// r(x); +infinity for points outside a box (beyond a 1e-12 tolerance).
double reg_value(const Regularizer& reg, const Eigen::VectorXd& x);

}  // namespace bpsg
