#include <cmath>
#include <limits>
#include <stdexcept>

#include "bpsg/regularizers.hpp"
#include "bpsg/rng.hpp"
#include "doctest.h"

using namespace bpsg;

namespace {

// Exhaustive 1-d minimization of r(y) + (y-x)^2/(2a) on a fine grid; the
// prox output must land within one grid step of this argmin.
double grid_prox_1d(const Regularizer& reg, double x, double alpha,
                    double lo = -4.0, double hi = 4.0, double step = 1e-4) {
  double best_y = lo;
  double best_v = std::numeric_limits<double>::infinity();
  for (double y = lo; y <= hi; y += step) {
    Eigen::VectorXd yv(1);
    yv[0] = y;
    const double rv = reg_value(reg, yv);
    if (!std::isfinite(rv)) continue;
    const double v = rv + (y - x) * (y - x) / (2.0 * alpha);
    if (v < best_v) {
      best_v = v;
      best_y = y;
    }
  }
  return best_y;
}

}  // namespace

TEST_CASE("soft-threshold prox matches the hand-worked pair") {
  const Regularizer reg = l1_reg(0.2);
  Eigen::VectorXd x(2);
  x << 0.05, -0.3;
  const Eigen::VectorXd y = prox(reg, x, 0.5);
  CHECK(y[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(y[1] == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("zero regularizer prox is the identity") {
  Eigen::VectorXd x(2);
  x << 1.7, -2.2;
  const Eigen::VectorXd y = prox(zero_reg(), x, 3.0);
  CHECK(y[0] == 1.7);
  CHECK(y[1] == -2.2);
}

TEST_CASE("box prox clamps componentwise") {
  Eigen::VectorXd lo(2), hi(2), x(2);
  lo << -1, -1;
  hi << 1, 1;
  x << 2.0, -0.5;
  const Eigen::VectorXd y = prox(box_reg(lo, hi), x, 0.3);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == -0.5);
}

TEST_CASE("prox rejects nonpositive steps and mismatched box bounds") {
  Eigen::VectorXd x(1);
  x << 0.5;
  CHECK_THROWS_AS(prox(l1_reg(0.1), x, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(prox(l1_reg(0.1), x, -1.0), std::invalid_argument);

  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  CHECK_THROWS_AS(prox(box_reg(lo, hi), x, 1.0), std::invalid_argument);
}

TEST_CASE("regularizer values: weighted 1-norm and box membership") {
  Eigen::VectorXd x(2);
  x << 1, -2;
  CHECK(reg_value(l1_reg(0.1), x) == doctest::Approx(0.3).epsilon(1e-15));

  Eigen::VectorXd lo(1), hi(1), in(1), out(1);
  lo << 0;
  hi << 1;
  in << 0.5;
  out << 2;
  const Regularizer box = box_reg(lo, hi);
  CHECK(reg_value(box, in) == 0.0);
  CHECK(std::isinf(reg_value(box, out)));
  CHECK(reg_value(box, out) > 0.0);
  CHECK(reg_value(zero_reg(), x) == 0.0);
}

TEST_CASE("1-d prox agrees with brute-force grid minimization") {
  const double step = 1e-4;
  const Regularizer l1 = l1_reg(0.3);
  Eigen::VectorXd lo(1), hi(1);
  lo << -0.4;
  hi << 0.9;
  const Regularizer box = box_reg(lo, hi);

  const double points[] = {-1.3, -0.2, 0.0, 0.37, 2.5};
  const double alphas[] = {0.25, 0.7, 1.5};
  for (double xv : points) {
    for (double a : alphas) {
      Eigen::VectorXd x(1);
      x[0] = xv;
      CHECK(std::abs(prox(l1, x, a)[0] - grid_prox_1d(l1, xv, a)) <=
            step + 1e-12);
      CHECK(std::abs(prox(box, x, a)[0] - grid_prox_1d(box, xv, a)) <=
            step + 1e-12);
    }
  }
}

TEST_CASE("prox is nonexpansive on random pairs") {
  Rng rng(5);
  const Regularizer l1 = l1_reg(0.4);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(6, -0.5);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(6, 1.25);
  const Regularizer box = box_reg(lo, hi);

  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd u(6), v(6);
    for (int j = 0; j < 6; ++j) {
      u[j] = 3.0 * rng.normal();
      v[j] = 3.0 * rng.normal();
    }
    const double a = 0.1 + 2.0 * rng.uniform();
    CHECK((prox(l1, u, a) - prox(l1, v, a)).norm() <=
          (u - v).norm() + 1e-12);
    CHECK((prox(box, u, a) - prox(box, v, a)).norm() <=
          (u - v).norm() + 1e-12);
    CHECK((prox(zero_reg(), u, a) - prox(zero_reg(), v, a)).norm() ==
          doctest::Approx((u - v).norm()));
  }
}

TEST_CASE("box prox ignores the step size") {
  Rng rng(7);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(4, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(4, 1.0);
  const Regularizer box = box_reg(lo, hi);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(4);
    for (int j = 0; j < 4; ++j) x[j] = 4.0 * rng.normal();
    const Eigen::VectorXd a = prox(box, x, 0.01);
    const Eigen::VectorXd b = prox(box, x, 1.0);
    const Eigen::VectorXd c = prox(box, x, 100.0);
    for (int j = 0; j < 4; ++j) {
      CHECK(a[j] == b[j]);
      CHECK(b[j] == c[j]);
    }
  }
}

TEST_CASE("box prox is idempotent (projection fixed point)") {
  Rng rng(9);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, -0.3);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 0.8);
  const Regularizer box = box_reg(lo, hi);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(3);
    for (int j = 0; j < 3; ++j) x[j] = 2.0 * rng.normal();
    const Eigen::VectorXd once = prox(box, x, 0.5);
    const Eigen::VectorXd twice = prox(box, once, 0.5);
    for (int j = 0; j < 3; ++j) CHECK(once[j] == twice[j]);
  }
}

TEST_CASE("box construction rejects inverted bounds") {
  Eigen::VectorXd lo(1), hi(1);
  lo << 1.0;
  hi << 0.0;
  CHECK_THROWS_AS(box_reg(lo, hi), std::invalid_argument);
}

TEST_CASE("l1 construction rejects negative weights") {
  CHECK_THROWS_AS(l1_reg(-0.1), std::invalid_argument);
}
