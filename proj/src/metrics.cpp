#include "bpsg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bpsg/oracles.hpp"
#include "bpsg/regularizers.hpp"

namespace bpsg {

GradientMapping gradient_mapping(const Problem& p, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& alphas) {
  const int n = p.part.blocks();
  if (x.size() != p.dimension())
    throw std::invalid_argument("point has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(p.dimension()));
  if (alphas.size() != n)
    throw std::invalid_argument("expected one steplength per block");

  GradientMapping out;
  out.vec.resize(p.dimension());
  out.block_norms_sq.resize(n);
  const Eigen::VectorXd grad = full_gradient(p, x);
  for (int i = 0; i < n; ++i) {
    const double a = alphas[i];
    if (!(a > 0.0))
      throw std::invalid_argument("steplength for block " + std::to_string(i) +
                                  " must be positive");
    const int off = p.part.offsets[i];
    const int di = p.part.dims[i];
    const Eigen::VectorXd step =
        prox(p.regs[i], x.segment(off, di) - a * grad.segment(off, di), a);
    out.vec.segment(off, di) = (x.segment(off, di) - step) / a;
    out.block_norms_sq[i] = out.vec.segment(off, di).squaredNorm();
  }
  out.norm_sq = out.block_norms_sq.sum();
  return out;
}

namespace {

std::size_t common_length(const std::vector<RunRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("no trajectories to aggregate");
  std::size_t len = records.front().rows.size();
  for (const RunRecord& r : records) len = std::min(len, r.rows.size());
  if (len == 0) throw std::invalid_argument("empty trajectory record");
  return len;
}

}  // namespace

std::vector<SeriesPoint> ergodic_gap(const std::vector<RunRecord>& records) {
  const std::size_t len = common_length(records);
  std::vector<double> total(len, 0.0);
  for (const RunRecord& r : records) {
    double running = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      const double g = r.rows[j].gmap_sq;
      if (!std::isfinite(g))
        throw std::invalid_argument(
            "gradient-mapping norm missing at iteration " +
            std::to_string(r.rows[j].k) + "; record with metrics_stride 1");
      running += g;
      total[j] += running / static_cast<double>(j + 1);
    }
  }
  std::vector<SeriesPoint> out(len);
  for (std::size_t j = 0; j < len; ++j)
    out[j] = {records.front().rows[j].k,
              total[j] / static_cast<double>(records.size())};
  return out;
}

std::vector<SeriesPoint> mean_gap(const std::vector<RunRecord>& records,
                                  double fstar) {
  const std::size_t len = common_length(records);
  std::vector<SeriesPoint> out(len);
  for (std::size_t j = 0; j < len; ++j) {
    double total = 0.0;
    for (const RunRecord& r : records) total += r.rows[j].objective;
    out[j] = {records.front().rows[j].k,
              total / static_cast<double>(records.size()) - fstar};
  }
  return out;
}

RateFit fit_rate(const std::vector<SeriesPoint>& series, std::uint64_t from,
                 std::uint64_t to, FitScale scale) {
  if (from > to)
    throw std::invalid_argument("rate fit window is empty (from > to)");

  std::vector<double> xs, ys;
  for (const SeriesPoint& pt : series) {
    if (pt.k < from || pt.k > to) continue;
    if (scale == FitScale::loglog && pt.k == 0) continue;
    if (!(pt.value > 0.0) || !std::isfinite(pt.value))
      throw std::invalid_argument("rate fit needs positive values (k=" +
                                  std::to_string(pt.k) + ")");
    xs.push_back(scale == FitScale::loglog
                     ? std::log(static_cast<double>(pt.k))
                     : static_cast<double>(pt.k));
    ys.push_back(std::log(pt.value));
  }
  const int m = static_cast<int>(xs.size());
  if (m < 2)
    throw std::invalid_argument("rate fit window holds fewer than 2 points");

  double mx = 0.0, my = 0.0;
  for (int j = 0; j < m; ++j) {
    mx += xs[j];
    my += ys[j];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int j = 0; j < m; ++j) {
    sxx += (xs[j] - mx) * (xs[j] - mx);
    sxy += (xs[j] - mx) * (ys[j] - my);
    syy += (ys[j] - my) * (ys[j] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("rate fit window holds a single distinct k");

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = m;
  const double ss_res = syy - fit.slope * sxy;
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace bpsg
