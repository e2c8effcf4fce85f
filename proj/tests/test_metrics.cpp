#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bpsg/metrics.hpp"
#include "bpsg/oracles.hpp"
#include "bpsg/problems.hpp"
#include "bpsg/rng.hpp"
#include "bpsg/solver.hpp"
#include "doctest.h"

using namespace bpsg;

namespace {

RunRecord synthetic_record(const std::vector<double>& gmap,
                           const std::vector<double>& objective = {}) {
  RunRecord rec;
  rec.rows.resize(gmap.size());
  for (std::size_t j = 0; j < gmap.size(); ++j) {
    rec.rows[j].k = j;
    rec.rows[j].gmap_sq = gmap[j];
    rec.rows[j].objective = j < objective.size() ? objective[j] : 0.0;
  }
  rec.x_final = Eigen::VectorXd::Zero(1);
  return rec;
}

}  // namespace

TEST_CASE("mapping reduces to the gradient when regularizers vanish") {
  Eigen::VectorXd curv(4), center(4);
  curv << 1, 2, 3, 4;
  center << 0.5, -0.2, 0.1, 0.9;
  const Problem p = make_pl_quadratic(curv, center, 0.0, 0.0, 2);

  Rng rng(1);
  Eigen::VectorXd x(4), alphas(2);
  for (int j = 0; j < 4; ++j) x[j] = rng.normal();
  alphas << 0.3, 0.07;

  const GradientMapping gm = gradient_mapping(p, x, alphas);
  const Eigen::VectorXd grad = full_gradient(p, x);
  CHECK((gm.vec - grad).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(gm.norm_sq == doctest::Approx(grad.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("mapping of the isotropic quadratic at [3,4] has norm 5") {
  Eigen::VectorXd curv = Eigen::VectorXd::Ones(2);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(2);
  const Problem p = make_pl_quadratic(curv, center, 0.0, 0.0, 1);
  Eigen::VectorXd x(2), alphas(1);
  x << 3, 4;
  for (double a : {0.01, 0.5, 2.0}) {
    alphas << a;
    CHECK(gradient_mapping(p, x, alphas).norm_sq ==
          doctest::Approx(25.0).epsilon(1e-12));
  }
}

TEST_CASE("mapping vanishes at the reference optimum") {
  Rng rng(2);
  const Problem p = gen_lasso(40, 10, 2, 0.4, 0.05, 0.1, {}, rng);
  const ReferenceSolution ref = reference_optimum(p, 1e-8);
  REQUIRE(ref.converged);
  const Eigen::VectorXd alphas =
      resolve_steplengths(parse_steplength("quarter_inverse"), p);
  const GradientMapping gm = gradient_mapping(p, ref.x, alphas);
  CHECK(std::sqrt(gm.norm_sq) <= 1e-7);  // 10x the reference tolerance
}

TEST_CASE("with no regularizer the mapping ignores the partition") {
  Rng rng(3);
  Eigen::VectorXd curv(6), center(6);
  for (int j = 0; j < 6; ++j) {
    curv[j] = 1.0 + rng.uniform();
    center[j] = rng.normal();
  }
  const Problem one = make_pl_quadratic(curv, center, 0.0, 0.0, 1);
  const Problem three = make_pl_quadratic(curv, center, 0.0, 0.0, 3);

  Eigen::VectorXd x(6);
  for (int j = 0; j < 6; ++j) x[j] = rng.normal();
  const double a = 0.4;
  const GradientMapping g1 =
      gradient_mapping(one, x, Eigen::VectorXd::Constant(1, a));
  const GradientMapping g3 =
      gradient_mapping(three, x, Eigen::VectorXd::Constant(3, a));
  CHECK((g1.vec - g3.vec).lpNorm<Eigen::Infinity>() <= 1e-14);
  CHECK(g1.norm_sq == doctest::Approx(g3.norm_sq).epsilon(1e-14));
}

TEST_CASE("inside a box the mapping equals the raw gradient") {
  Eigen::VectorXd curv(2), center(2);
  curv << 1, 2;
  center << 0.2, -0.1;
  Problem p = make_pl_quadratic(curv, center, 0.0, 0.0, 1);
  p.regs.clear();
  p.regs.push_back(box_reg(Eigen::VectorXd::Constant(2, -10.0),
                           Eigen::VectorXd::Constant(2, 10.0)));

  Eigen::VectorXd x(2), alphas(1);
  x << 0.3, 0.4;  // deep inside the box, small step stays interior
  alphas << 0.05;
  const GradientMapping gm = gradient_mapping(p, x, alphas);
  const Eigen::VectorXd grad = full_gradient(p, x);
  CHECK((gm.vec - grad).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("mapping validates dimensions and steplengths") {
  Eigen::VectorXd curv(2), center(2);
  curv << 1, 1;
  center << 0, 0;
  const Problem p = make_pl_quadratic(curv, center, 0.0, 0.0, 1);
  Eigen::VectorXd x(2), alphas(1), bad_alpha(1), wrong(3);
  x << 1, 1;
  alphas << 0.5;
  bad_alpha << 0.0;
  wrong.setZero();
  CHECK_THROWS_AS(gradient_mapping(p, wrong, alphas), std::invalid_argument);
  CHECK_THROWS_AS(gradient_mapping(p, x, bad_alpha), std::invalid_argument);
  CHECK_THROWS_AS(gradient_mapping(p, x, Eigen::VectorXd::Ones(2)),
                  std::invalid_argument);
}

TEST_CASE("ergodic averaging of a constant series is the constant") {
  const std::vector<RunRecord> recs = {
      synthetic_record({3.0, 3.0, 3.0, 3.0, 3.0})};
  const std::vector<SeriesPoint> s = ergodic_gap(recs);
  REQUIRE(s.size() == 5);
  for (const SeriesPoint& pt : s) CHECK(pt.value == doctest::Approx(3.0));
}

TEST_CASE("ergodic averaging of a harmonic series decreases") {
  std::vector<double> vals(200);
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = 1.0 / (k + 1.0);
  const std::vector<SeriesPoint> s = ergodic_gap({synthetic_record(vals)});
  for (std::size_t j = 1; j < s.size(); ++j) CHECK(s[j].value < s[j - 1].value);
  // running mean of 1/(k+1) is H_{K+1}/(K+1) ~ ln(K)/K
  const double expect = std::log(200.0) / 200.0;
  CHECK(s.back().value == doctest::Approx(expect).epsilon(0.2));
}

TEST_CASE("ergodic averaging pools trajectories pointwise") {
  const std::vector<RunRecord> recs = {synthetic_record({2.0, 4.0, 6.0}),
                                       synthetic_record({4.0, 8.0, 2.0})};
  const std::vector<SeriesPoint> s = ergodic_gap(recs);
  REQUIRE(s.size() == 3);
  CHECK(s[0].value == doctest::Approx(3.0));           // (2+4)/2
  CHECK(s[1].value == doctest::Approx(4.5));           // (3+6)/2
  CHECK(s[2].value == doctest::Approx((4.0 + 14.0 / 3.0) / 2.0));
}

TEST_CASE("ergodic averaging truncates to the shortest trajectory") {
  const std::vector<RunRecord> recs = {synthetic_record({1.0, 1.0, 1.0, 1.0}),
                                       synthetic_record({1.0, 1.0})};
  CHECK(ergodic_gap(recs).size() == 2);
}

TEST_CASE("ergodic averaging rejects rows without mapping norms") {
  RunRecord rec = synthetic_record({1.0, 2.0, 3.0});
  rec.rows[1].gmap_sq = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ergodic_gap({rec}), std::invalid_argument);
  CHECK_THROWS_AS(ergodic_gap({}), std::invalid_argument);
}

TEST_CASE("mean gap subtracts the reference value pointwise") {
  const std::vector<RunRecord> recs = {
      synthetic_record({0, 0, 0}, {3.0, 2.0, 1.5}),
      synthetic_record({0, 0, 0}, {5.0, 4.0, 2.5})};
  const std::vector<SeriesPoint> s = mean_gap(recs, 1.0);
  REQUIRE(s.size() == 3);
  CHECK(s[0].value == doctest::Approx(3.0));
  CHECK(s[1].value == doctest::Approx(2.0));
  CHECK(s[2].value == doctest::Approx(1.0));
}

TEST_CASE("rate fits recover exact power laws") {
  std::vector<SeriesPoint> inv, geo, flat;
  for (std::uint64_t k = 1; k <= 300; ++k)
    inv.push_back({k, 1.0 / static_cast<double>(k)});
  for (std::uint64_t k = 0; k <= 300; ++k)
    geo.push_back({k, std::pow(0.9, static_cast<double>(k))});
  for (std::uint64_t k = 1; k <= 300; ++k) flat.push_back({k, 7.0});

  const RateFit f1 = fit_rate(inv, 1, 300, FitScale::loglog);
  CHECK(std::abs(f1.slope - (-1.0)) <= 1e-9);
  CHECK(f1.r2 >= 1.0 - 1e-12);

  const RateFit f2 = fit_rate(geo, 0, 300, FitScale::semilog);
  CHECK(std::abs(f2.slope - std::log(0.9)) <= 1e-9);
  CHECK(f2.r2 >= 1.0 - 1e-12);

  const RateFit f3 = fit_rate(flat, 1, 300, FitScale::loglog);
  CHECK(std::abs(f3.slope) <= 1e-9);
}

TEST_CASE("rate fits respect the window and skip k=0 on loglog") {
  std::vector<SeriesPoint> s;
  for (std::uint64_t k = 0; k <= 100; ++k)
    s.push_back({k, std::pow(static_cast<double>(k) + 1.0, -2.0)});
  const RateFit wide = fit_rate(s, 0, 100, FitScale::loglog);
  const RateFit tail = fit_rate(s, 50, 100, FitScale::loglog);
  CHECK(wide.points == 100);  // k=0 dropped
  CHECK(tail.points == 51);
  // (k+1)^-2 looks ever more like k^-2 in the tail
  CHECK(std::abs(tail.slope - (-2.0)) <= 0.05);
  CHECK(std::abs(tail.slope + 2.0) < std::abs(wide.slope + 2.0));
}

TEST_CASE("rate fits reject nonpositive values and degenerate windows") {
  std::vector<SeriesPoint> s;
  for (std::uint64_t k = 1; k <= 20; ++k)
    s.push_back({k, static_cast<double>(21 - k)});
  s[5].value = 0.0;
  CHECK_THROWS_AS(fit_rate(s, 1, 20, FitScale::loglog), std::invalid_argument);
  s[5].value = -1.0;
  CHECK_THROWS_AS(fit_rate(s, 1, 20, FitScale::loglog), std::invalid_argument);
  s[5].value = 15.0;
  CHECK_THROWS_AS(fit_rate(s, 20, 1, FitScale::loglog), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate(s, 7, 7, FitScale::loglog), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({}, 1, 20, FitScale::semilog),
                  std::invalid_argument);
}
