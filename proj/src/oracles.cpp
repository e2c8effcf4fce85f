#include "bpsg/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace bpsg {

namespace {

void check_point(const Problem& p, const Eigen::VectorXd& x, int i) {
  check_block_index(p.part, i);
  if (x.size() != p.dimension())
    throw std::invalid_argument("gradient oracle: dimension mismatch");
}

// d/dz of 1/2 (y - phi(z))^2
inline double sigmoid_residual_slope(double z, double y) {
  const double s = sigmoid(z);
  return (s - y) * s * (1.0 - s);
}

}  // namespace

Eigen::VectorXd index_gradient_block(const Problem& p, const Eigen::VectorXd& x,
                                     int i, int m) {
  check_point(p, x, i);
  const int off = p.part.offsets[i];
  const int di = p.part.dims[i];
  switch (p.kind) {
    case ProblemKind::lasso: {
      if (m < 0 || m >= p.samples())
        throw std::invalid_argument("sample index out of range");
      const double r = p.A.row(m).dot(x) - p.b(m);
      return r * p.A.row(m).segment(off, di).transpose();
    }
    case ProblemKind::sigmoid_ls: {
      if (m < 0 || m >= p.samples())
        throw std::invalid_argument("sample index out of range");
      const int features = static_cast<int>(p.A.cols());
      const double z = p.A.row(m).dot(x.head(features)) + x(features);
      const double g = sigmoid_residual_slope(z, p.b(m));
      Eigen::VectorXd out(di);
      const int hi = off + di;
      const int nf = std::min(hi, features) - off;
      if (nf > 0) out.head(nf) = g * p.A.row(m).segment(off, nf).transpose();
      if (hi > features) out(di - 1) = g;  // intercept coordinate
      return out;
    }
    case ProblemKind::pl_quadratic:
      throw std::invalid_argument(
          "index_gradient_block: pl_quadratic has no sample set");
  }
  throw std::logic_error("unreachable problem kind");
}

GradientSample sample_gradient_block(const Problem& p,
                                     const Eigen::VectorXd& x, int i,
                                     std::uint64_t batch, Rng& rng) {
  if (batch < 1)
    throw std::invalid_argument("sample_gradient_block: batch must be >= 1");
  check_point(p, x, i);
  const int off = p.part.offsets[i];
  const int di = p.part.dims[i];

  if (p.kind == ProblemKind::pl_quadratic) {
    const double scale = p.noise_sd / std::sqrt(static_cast<double>(batch));
    Eigen::VectorXd g(di);
    for (int j = 0; j < di; ++j) {
      const double c = p.curv(off + j);
      g(j) = c * (x(off + j) - p.center(off + j)) + c * scale * rng.normal();
    }
    return {std::move(g), batch};
  }

  const std::uint64_t n = static_cast<std::uint64_t>(p.samples());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(di);
  for (std::uint64_t s = 0; s < batch; ++s) {
    const int m = static_cast<int>(rng.uniform_int(n));
    if (p.kind == ProblemKind::lasso) {
      const double r = p.A.row(m).dot(x) - p.b(m);
      g += r * p.A.row(m).segment(off, di).transpose();
    } else {
      const int features = static_cast<int>(p.A.cols());
      const double z = p.A.row(m).dot(x.head(features)) + x(features);
      const double gr = sigmoid_residual_slope(z, p.b(m));
      const int hi = off + di;
      const int nf = std::min(hi, features) - off;
      if (nf > 0) g.head(nf) += gr * p.A.row(m).segment(off, nf).transpose();
      if (hi > features) g(di - 1) += gr;
    }
  }
  g /= static_cast<double>(batch);
  return {std::move(g), batch};
}

Eigen::VectorXd full_gradient(const Problem& p, const Eigen::VectorXd& x) {
  if (x.size() != p.dimension())
    throw std::invalid_argument("gradient oracle: dimension mismatch");
  switch (p.kind) {
    case ProblemKind::lasso: {
      const double n = static_cast<double>(p.A.rows());
      return p.A.transpose() * (p.A * x - p.b) / n;
    }
    case ProblemKind::sigmoid_ls: {
      const int features = static_cast<int>(p.A.cols());
      const double n = static_cast<double>(p.A.rows());
      Eigen::VectorXd z = p.A * x.head(features);
      z.array() += x(features);
      Eigen::VectorXd g(z.size());
      for (Eigen::Index m = 0; m < z.size(); ++m)
        g(m) = sigmoid_residual_slope(z(m), p.b(m));
      Eigen::VectorXd out(p.dimension());
      out.head(features) = p.A.transpose() * g / n;
      out(features) = g.sum() / n;
      return out;
    }
    case ProblemKind::pl_quadratic:
      return p.curv.array() * (x - p.center).array();
  }
  throw std::logic_error("unreachable problem kind");
}

Eigen::VectorXd full_gradient_block(const Problem& p, const Eigen::VectorXd& x,
                                    int i) {
  check_point(p, x, i);
  const int off = p.part.offsets[i];
  const int di = p.part.dims[i];
  switch (p.kind) {
    case ProblemKind::lasso: {
      const double n = static_cast<double>(p.A.rows());
      return p.A.middleCols(off, di).transpose() * (p.A * x - p.b) / n;
    }
    case ProblemKind::sigmoid_ls:
      return full_gradient(p, x).segment(off, di);
    case ProblemKind::pl_quadratic:
      return p.curv.segment(off, di).array() *
             (x.segment(off, di) - p.center.segment(off, di)).array();
  }
  throw std::logic_error("unreachable problem kind");
}

double estimate_sigma_sq(const Problem& p, const Eigen::VectorXd& x, int draws,
                         Rng& rng) {
  if (draws < 2) throw std::invalid_argument("estimate_sigma_sq: draws < 2");
  double worst = 0.0;
  for (int i = 0; i < p.part.blocks(); ++i) {
    const Eigen::VectorXd mean = full_gradient_block(p, x, i);
    double acc = 0.0;
    for (int s = 0; s < draws; ++s) {
      const GradientSample g = sample_gradient_block(p, x, i, 1, rng);
      acc += (g.grad - mean).squaredNorm();
    }
    worst = std::max(worst, acc / static_cast<double>(draws));
  }
  return worst;
}

}  // namespace bpsg
