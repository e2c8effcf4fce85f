#include "bpsg/regularizers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bpsg {

Regularizer zero_reg() { return Regularizer{}; }

Regularizer l1_reg(double lambda) {
  if (lambda < 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("l1 weight must be finite and >= 0");
  Regularizer r;
  r.kind = RegKind::l1;
  r.lambda = lambda;
  return r;
}

Regularizer box_reg(const Eigen::VectorXd& lower,
                    const Eigen::VectorXd& upper) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("box bounds have mismatched lengths");
  if ((lower.array() > upper.array()).any())
    throw std::invalid_argument("box lower bound exceeds upper bound");
  Regularizer r;
  r.kind = RegKind::box;
  r.lower = lower;
  r.upper = upper;
  return r;
}

Eigen::VectorXd prox(const Regularizer& reg, const Eigen::VectorXd& x,
                     double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("prox requires alpha > 0");
  switch (reg.kind) {
    case RegKind::zero:
      return x;
    case RegKind::l1: {
      const double t = alpha * reg.lambda;
      return x.array().sign() * (x.array().abs() - t).max(0.0);
    }
    case RegKind::box: {
      if (reg.lower.size() != x.size())
        throw std::invalid_argument("box bounds do not match block dimension");
      // projection; independent of alpha
      return x.array().max(reg.lower.array()).min(reg.upper.array());
    }
  }
  throw std::logic_error("unreachable regularizer kind");
}

double reg_value(const Regularizer& reg, const Eigen::VectorXd& x) {
  switch (reg.kind) {
    case RegKind::zero:
      return 0.0;
    case RegKind::l1:
      return reg.lambda * x.lpNorm<1>();
    case RegKind::box: {
      if (reg.lower.size() != x.size())
        throw std::invalid_argument("box bounds do not match block dimension");
      const double tol = 1e-12;
      if ((x.array() < reg.lower.array() - tol).any() ||
          (x.array() > reg.upper.array() + tol).any())
        return std::numeric_limits<double>::infinity();
      return 0.0;
    }
  }
  throw std::logic_error("unreachable regularizer kind");
}

}  // namespace bpsg
