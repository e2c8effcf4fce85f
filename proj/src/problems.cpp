#include "bpsg/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bpsg {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double scaled_gram_norm(const Eigen::Ref<const Eigen::MatrixXd>& M,
                        int max_iters, double rel_tol) {
  const double n = static_cast<double>(M.rows());
  if (M.size() == 0 || n == 0.0) return 0.0;
  // deterministic start with a small ramp to break symmetry
  Eigen::VectorXd v(M.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = 1.0 + 1e-3 * j;
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd w = M.transpose() * (M * v) / n;
    const double norm = w.norm();
    if (norm <= 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

namespace {

std::vector<Regularizer> l1_per_block(int n, double lambda) {
  std::vector<Regularizer> regs;
  regs.reserve(n);
  for (int i = 0; i < n; ++i) regs.push_back(l1_reg(lambda));
  return regs;
}

}  // namespace

Problem gen_lasso(int N, int d, int n_blocks, double density, double noise_sd,
                  double lambda, const std::vector<double>& block_variances,
                  Rng& rng) {
  if (N < 1 || d < 1) throw std::invalid_argument("gen_lasso: N, d must be >= 1");
  if (!(density > 0.0) || density > 1.0)
    throw std::invalid_argument("gen_lasso: density must lie in (0,1]");
  if (noise_sd < 0.0) throw std::invalid_argument("gen_lasso: noise_sd < 0");
  if (n_blocks < 1 || n_blocks > d)
    throw std::invalid_argument("gen_lasso: need 1 <= n_blocks <= d");
  if (!block_variances.empty()) {
    if (static_cast<int>(block_variances.size()) != n_blocks)
      throw std::invalid_argument(
          "gen_lasso: block_variances length must equal n_blocks");
    for (double v : block_variances)
      if (!(v > 0.0))
        throw std::invalid_argument("gen_lasso: block variances must be > 0");
  }

  Problem p;
  p.kind = ProblemKind::lasso;
  p.part = make_equal_partition(d, n_blocks);
  p.regs = l1_per_block(n_blocks, lambda);

  // Fixed draw order (support, nonzero values, design rows, target noise) so
  // a given stream always yields the same instance.
  int k = static_cast<int>(std::ceil(density * d - 1e-9));
  k = std::max(1, std::min(k, d));
  std::vector<int> idx(d);
  for (int j = 0; j < d; ++j) idx[j] = j;
  for (int j = 0; j < k; ++j)
    std::swap(idx[j], idx[j + static_cast<int>(rng.uniform_int(d - j))]);

  p.truth = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < k; ++j) p.truth(idx[j]) = rng.normal();

  Eigen::VectorXd col_sd = Eigen::VectorXd::Ones(d);
  if (!block_variances.empty()) {
    for (int i = 0; i < n_blocks; ++i)
      col_sd.segment(p.part.offsets[i], p.part.dims[i])
          .setConstant(std::sqrt(block_variances[i]));
  }

  p.A.resize(N, d);
  for (int m = 0; m < N; ++m)
    for (int j = 0; j < d; ++j) p.A(m, j) = rng.normal() * col_sd(j);

  p.b.resize(N);
  for (int m = 0; m < N; ++m)
    p.b(m) = p.A.row(m).dot(p.truth) + rng.normal() * noise_sd;

  p.L = lipschitz_blocks(p);
  return p;
}

Problem make_pl_quadratic(const Eigen::VectorXd& curv,
                          const Eigen::VectorXd& center, double noise_sd,
                          double lambda, int n_blocks) {
  if (curv.size() != center.size())
    throw std::invalid_argument("make_pl_quadratic: curv/center size mismatch");
  if ((curv.array() <= 0.0).any())
    throw std::invalid_argument("make_pl_quadratic: curvatures must be > 0");
  if (noise_sd < 0.0)
    throw std::invalid_argument("make_pl_quadratic: noise_sd < 0");
  Problem p;
  p.kind = ProblemKind::pl_quadratic;
  p.curv = curv;
  p.center = center;
  p.noise_sd = noise_sd;
  p.part = make_equal_partition(static_cast<int>(curv.size()), n_blocks);
  p.regs = l1_per_block(n_blocks, lambda);
  p.pl_mu = curv.minCoeff();
  p.L = lipschitz_blocks(p);
  return p;
}

Problem gen_pl_quadratic(int d, int n_blocks, double mu, double L_spread,
                         double lambda, Rng& rng, double target_sd,
                         double noise_sd) {
  if (!(mu > 0.0)) throw std::invalid_argument("gen_pl_quadratic: mu must be > 0");
  if (L_spread < 1.0)
    throw std::invalid_argument("gen_pl_quadratic: L_spread must be >= 1");
  if (lambda < 0.0) throw std::invalid_argument("gen_pl_quadratic: lambda < 0");
  if (d < 1 || n_blocks < 1 || n_blocks > d)
    throw std::invalid_argument("gen_pl_quadratic: need 1 <= n_blocks <= d");

  // Deterministic spectrum: block Lipschitz constants log-spaced from mu to
  // mu*L_spread, curvatures within each block log-spaced from mu up to that
  // block's constant.  Every block then owns one coordinate at exactly mu, so
  // the per-block decay rates of the iterates do not depend on the seed.
  const BlockPartition part = make_equal_partition(d, n_blocks);
  Eigen::VectorXd curv(d);
  for (int i = 0; i < n_blocks; ++i) {
    const double frac = n_blocks > 1 ? static_cast<double>(i) / (n_blocks - 1)
                                     : 1.0;
    const double Li = mu * std::pow(L_spread, frac);
    const int s = part.dims[i];
    for (int m = 0; m < s; ++m) {
      const double t = s > 1 ? static_cast<double>(m) / (s - 1) : 1.0;
      curv(part.offsets[i] + m) = mu * std::pow(Li / mu, t);
    }
  }
  Eigen::VectorXd center(d);
  for (int j = 0; j < d; ++j)
    center(j) = (rng.uniform() < 0.5 ? -target_sd : target_sd);
  return make_pl_quadratic(curv, center, noise_sd, lambda, n_blocks);
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> load_libsvm(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  struct Entry {
    int col;
    double value;
  };
  std::vector<std::vector<Entry>> rows;
  std::vector<double> labels;
  int max_col = 0;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    double label;
    if (!(ls >> label)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": cannot parse label");
    }
    if (label == 1.0)
      labels.push_back(1.0);
    else if (label == -1.0 || label == 0.0)
      labels.push_back(0.0);
    else
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": label must be +1, -1, 0 or 1");
    std::vector<Entry> row;
    std::string tok;
    while (ls >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": expected index:value, got '" + tok + "'");
      int col;
      double value;
      try {
        std::size_t used;
        col = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        value = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": malformed feature '" + tok + "'");
      }
      if (col < 1)
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": indices are 1-based");
      max_col = std::max(max_col, col);
      row.push_back({col - 1, value});
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no samples");

  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(rows.size(), max_col);
  Eigen::VectorXd y(rows.size());
  for (std::size_t m = 0; m < rows.size(); ++m) {
    y(m) = labels[m];
    for (const Entry& e : rows[m]) X(m, e.col) = e.value;
  }
  return {std::move(X), std::move(y)};
}

Problem gen_sigmoid_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       int n_blocks) {
  const int features = static_cast<int>(X.cols());
  if (X.rows() < 1 || features < 1)
    throw std::invalid_argument("gen_sigmoid_ls: empty data");
  if (X.rows() != y.size())
    throw std::invalid_argument("gen_sigmoid_ls: feature/label count mismatch");
  for (Eigen::Index m = 0; m < y.size(); ++m)
    if (y(m) != 0.0 && y(m) != 1.0)
      throw std::invalid_argument("gen_sigmoid_ls: labels must be 0 or 1");
  if (n_blocks < 1 || n_blocks > features)
    throw std::invalid_argument("gen_sigmoid_ls: need 1 <= n_blocks <= d");

  Problem p;
  p.kind = ProblemKind::sigmoid_ls;
  p.A = X;
  p.b = y;
  // the intercept joins the last block
  BlockPartition base = make_equal_partition(features, n_blocks);
  std::vector<int> dims = base.dims;
  dims.back() += 1;
  p.part = make_partition(dims);
  p.regs.assign(n_blocks, zero_reg());
  p.L = lipschitz_blocks(p);
  return p;
}

Problem gen_sigmoid_synth(int N, int d, int n_blocks, Rng& rng) {
  if (N < 1 || d < 1)
    throw std::invalid_argument("gen_sigmoid_synth: N, d must be >= 1");
  Eigen::MatrixXd X(N, d);
  for (int m = 0; m < N; ++m)
    for (int j = 0; j < d; ++j) X(m, j) = rng.normal();
  Eigen::VectorXd w(d);
  for (int j = 0; j < d; ++j) w(j) = rng.normal();
  Eigen::VectorXd y(N);
  Eigen::VectorXd z = X * w;
  for (int m = 0; m < N; ++m) y(m) = rng.uniform() < sigmoid(z(m)) ? 1.0 : 0.0;
  return gen_sigmoid_ls(X, y, n_blocks);
}

Eigen::VectorXd lipschitz_blocks(const Problem& p) {
  const int n = p.part.blocks();
  Eigen::VectorXd L(n);
  for (int i = 0; i < n; ++i) {
    const int off = p.part.offsets[i];
    const int di = p.part.dims[i];
    double Li = 0.0;
    switch (p.kind) {
      case ProblemKind::lasso:
        Li = scaled_gram_norm(p.A.middleCols(off, di));
        break;
      case ProblemKind::sigmoid_ls: {
        // conservative bound: curvature-of-residual bound times the mean
        // squared row norm over the block's columns (intercept column of
        // ones included in the last block)
        const int features = static_cast<int>(p.A.cols());
        const int hi = off + di;
        double sq = 0.0;
        if (off < features)
          sq += p.A.middleCols(off, std::min(hi, features) - off).squaredNorm();
        if (hi > features) sq += static_cast<double>(p.A.rows());
        Li = kSigmoidCurvatureBound * sq / static_cast<double>(p.A.rows());
        break;
      }
      case ProblemKind::pl_quadratic:
        Li = p.curv.segment(off, di).maxCoeff();
        break;
    }
    L(i) = std::max(Li, 1e-12);
  }
  return L;
}

double global_lipschitz(const Problem& p) {
  switch (p.kind) {
    case ProblemKind::lasso:
      return std::max(scaled_gram_norm(p.A, 1000, 1e-12), 1e-12);
    case ProblemKind::pl_quadratic:
      return p.curv.maxCoeff();
    case ProblemKind::sigmoid_ls:
      return p.L.maxCoeff() * p.part.blocks();
  }
  throw std::logic_error("unreachable problem kind");
}

double smooth_loss(const Problem& p, const Eigen::VectorXd& x) {
  if (x.size() != p.dimension())
    throw std::invalid_argument("smooth_loss: dimension mismatch");
  switch (p.kind) {
    case ProblemKind::lasso: {
      const double n = static_cast<double>(p.A.rows());
      return (p.A * x - p.b).squaredNorm() / (2.0 * n);
    }
    case ProblemKind::sigmoid_ls: {
      const int features = static_cast<int>(p.A.cols());
      Eigen::VectorXd z = p.A * x.head(features);
      z.array() += x(features);
      double s = 0.0;
      for (Eigen::Index m = 0; m < z.size(); ++m) {
        const double r = p.b(m) - sigmoid(z(m));
        s += r * r;
      }
      return s / (2.0 * static_cast<double>(p.A.rows()));
    }
    case ProblemKind::pl_quadratic: {
      const Eigen::ArrayXd diff = (x - p.center).array();
      return 0.5 * (p.curv.array() * (diff.square() + p.noise_sd * p.noise_sd))
                       .sum();
    }
  }
  throw std::logic_error("unreachable problem kind");
}

double objective(const Problem& p, const Eigen::VectorXd& x) {
  double v = smooth_loss(p, x);
  for (int i = 0; i < p.part.blocks(); ++i)
    v += reg_value(p.regs[i], block_slice(p.part, x, i));
  return v;
}

}  // namespace bpsg
