#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "bpsg/partition.hpp"
#include "bpsg/regularizers.hpp"
#include "bpsg/rng.hpp"

namespace bpsg {

enum class ProblemKind { lasso, sigmoid_ls, pl_quadratic };

// A block-structured composite objective F(x) = f(x) + sum_i r_i(x_i).
//
//   lasso         f(x) = (1/2N) sum_m (a_m.x - b_m)^2,       data in A, b
//   sigmoid_ls    f(w,c) = (1/2N) sum_m (y_m - phi(A_m.w+c))^2, labels in b;
//                 the intercept c is the last coordinate of the last block
//   pl_quadratic  f(x) = E[ 1/2 sum_j curv_j (x_j - center_j - xi_j)^2 ],
//                 xi_j ~ N(0, noise_sd^2); no stored samples
struct Problem {
  ProblemKind kind = ProblemKind::lasso;
  Eigen::MatrixXd A;        // N x d design (lasso) / N x (d-1) features (sigmoid)
  Eigen::VectorXd b;        // targets (lasso) / labels in {0,1} (sigmoid)
  Eigen::VectorXd curv;     // pl_quadratic diagonal curvatures, length d
  Eigen::VectorXd center;   // pl_quadratic noise-free minimizer of f
  double noise_sd = 0.0;    // pl_quadratic per-coordinate target jitter
  BlockPartition part;
  std::vector<Regularizer> regs;  // one per block
  Eigen::VectorXd L;        // per-block Lipschitz estimates
  double pl_mu = 0.0;       // PL modulus when certified by construction, else 0
  Eigen::VectorXd truth;    // lasso generating vector (diagnostic only)

  int dimension() const { return part.total; }
  int samples() const { return static_cast<int>(A.rows()); }
};

// Synthetic sparse least squares: ceil(density*d) standard-normal nonzeros in
// the generating vector, standard-normal rows (block columns rescaled to
// block_variances when supplied), additive N(0, noise_sd^2) target noise,
// l1(lambda) on every block.
Problem gen_lasso(int N, int d, int n_blocks, double density, double noise_sd,
                  double lambda, const std::vector<double>& block_variances,
                  Rng& rng);

// Diagonal quadratic with certified PL modulus mu: block Lipschitz constants
// log-spaced over [mu, L_spread*mu], curvatures log-spaced from mu within
// each block, centers +-target_sd with random signs, gradient noise from
// target jitter N(0, noise_sd^2), l1(lambda) per block.
Problem gen_pl_quadratic(int d, int n_blocks, double mu, double L_spread,
                         double lambda, Rng& rng, double target_sd = 1.0,
                         double noise_sd = 0.005);

// Direct construction used by tests and custom instances.
Problem make_pl_quadratic(const Eigen::VectorXd& curv,
                          const Eigen::VectorXd& center, double noise_sd,
                          double lambda, int n_blocks);

// Sparse LIBSVM text format ("label idx:val idx:val ...", 1-based indices,
// labels +1/-1 or 1/0 mapped to {0,1}). Throws with the offending line number.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> load_libsvm(
    const std::string& path);

// Sigmoid least squares over (w, intercept); zero regularizers.
Problem gen_sigmoid_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       int n_blocks);

// Synthetic classification data: standard-normal features, labels drawn
// Bernoulli(phi(x.w)) for a standard-normal w.
Problem gen_sigmoid_synth(int N, int d, int n_blocks, Rng& rng);

// Per-block Lipschitz estimates; see each kind's rule in the implementation.
// Degenerate blocks are floored at 1e-12.
Eigen::VectorXd lipschitz_blocks(const Problem& p);

// Lipschitz constant of the full smooth gradient: exact top eigenvalue for the
// quadratic kinds (power iteration for lasso), n * max_i L_i otherwise.
double global_lipschitz(const Problem& p);

double smooth_loss(const Problem& p, const Eigen::VectorXd& x);
double objective(const Problem& p, const Eigen::VectorXd& x);  // f + sum r_i

double sigmoid(double z);

// Largest eigenvalue of (M^T M)/rows(M) by power iteration.
double scaled_gram_norm(const Eigen::Ref<const Eigen::MatrixXd>& M,
                        int max_iters = 200, double rel_tol = 1e-10);

// Bound on |d/dz [(phi(z)-y) phi'(z)]| over y in [0,1]; certified on a grid in
// the sigmoid Lipschitz tests.
inline constexpr double kSigmoidCurvatureBound = 0.2;

}  // namespace bpsg
