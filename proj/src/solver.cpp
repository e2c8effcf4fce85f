#include "bpsg/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "bpsg/metrics.hpp"
#include "bpsg/regularizers.hpp"

namespace bpsg {

namespace {

double parse_rule_number(const std::string& spec, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("steplength rule '" + spec +
                                "': '" + text + "' is not a number");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

SteplengthRule parse_steplength(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_param = colon != std::string::npos;

  SteplengthRule rule;
  if (head == "quarter_inverse")
    rule.kind = StepKind::quarter_inverse;
  else if (head == "pl_optimal")
    rule.kind = StepKind::pl_optimal;
  else if (head == "inverse")
    rule.kind = StepKind::inverse;
  else if (head == "inverse_fraction")
    rule.kind = StepKind::inverse_fraction;
  else if (head == "fixed")
    rule.kind = StepKind::fixed;
  else if (head == "global_fraction")
    rule.kind = StepKind::global_fraction;
  else
    throw std::invalid_argument("steplength rule '" + spec +
                                "' is not recognized");

  const bool wants_param = rule.kind == StepKind::inverse_fraction ||
                           rule.kind == StepKind::fixed ||
                           rule.kind == StepKind::global_fraction;
  if (wants_param != has_param)
    throw std::invalid_argument(
        "steplength rule '" + spec +
        (wants_param ? "' needs a value, e.g. " + head + ":0.5"
                     : "' does not take a value"));
  if (wants_param) {
    rule.value = parse_rule_number(spec, spec.substr(colon + 1));
    if (!(rule.value > 0.0) || !std::isfinite(rule.value))
      throw std::invalid_argument("steplength rule '" + spec +
                                  "': value must be positive");
  }
  return rule;
}

std::string format_steplength(const SteplengthRule& rule) {
  switch (rule.kind) {
    case StepKind::quarter_inverse:
      return "quarter_inverse";
    case StepKind::pl_optimal:
      return "pl_optimal";
    case StepKind::inverse:
      return "inverse";
    case StepKind::inverse_fraction:
      return "inverse_fraction:" + format_double(rule.value);
    case StepKind::fixed:
      return "fixed:" + format_double(rule.value);
    case StepKind::global_fraction:
      return "global_fraction:" + format_double(rule.value);
  }
  throw std::logic_error("unknown steplength kind");
}

Eigen::VectorXd resolve_steplengths(const SteplengthRule& rule,
                                    const Problem& p) {
  const int n = p.part.blocks();
  Eigen::VectorXd alphas(n);
  switch (rule.kind) {
    case StepKind::quarter_inverse:
      alphas = (4.0 * p.L.array()).inverse();
      break;
    case StepKind::pl_optimal:
      alphas = (2.0 - std::sqrt(3.0)) * p.L.array().inverse();
      break;
    case StepKind::inverse:
      alphas = p.L.array().inverse();
      break;
    case StepKind::inverse_fraction:
      alphas = rule.value * p.L.array().inverse();
      break;
    case StepKind::fixed:
      alphas.setConstant(rule.value);
      break;
    case StepKind::global_fraction:
      alphas.setConstant(rule.value / global_lipschitz(p));
      break;
  }
  for (int i = 0; i < n; ++i)
    if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i]))
      throw std::invalid_argument("steplength for block " + std::to_string(i) +
                                  " is not positive and finite");
  return alphas;
}

void LossCache::init(const Problem& p, const Eigen::VectorXd& x) {
  switch (p.kind) {
    case ProblemKind::lasso:
      resid = p.A * x - p.b;
      break;
    case ProblemKind::sigmoid_ls: {
      const int d = p.dimension();
      resid = p.A * x.head(d - 1);
      resid.array() += x[d - 1];
      break;
    }
    case ProblemKind::pl_quadratic:
      resid.resize(0);
      break;
  }
}

void LossCache::update(const Problem& p, int i,
                       const Eigen::VectorXd& old_block,
                       const Eigen::VectorXd& new_block) {
  const int off = p.part.offsets[i];
  const int di = p.part.dims[i];
  switch (p.kind) {
    case ProblemKind::lasso:
      resid.noalias() += p.A.middleCols(off, di) * (new_block - old_block);
      break;
    case ProblemKind::sigmoid_ls: {
      const bool has_intercept = off + di == p.dimension();
      const int nf = has_intercept ? di - 1 : di;
      if (nf > 0)
        resid.noalias() +=
            p.A.middleCols(off, nf) *
            (new_block.head(nf) - old_block.head(nf));
      if (has_intercept)
        resid.array() += new_block[di - 1] - old_block[di - 1];
      break;
    }
    case ProblemKind::pl_quadratic:
      break;
  }
}

double LossCache::smooth(const Problem& p, const Eigen::VectorXd& x) const {
  switch (p.kind) {
    case ProblemKind::lasso:
      return resid.squaredNorm() / (2.0 * p.samples());
    case ProblemKind::sigmoid_ls: {
      double total = 0.0;
      for (Eigen::Index m = 0; m < resid.size(); ++m) {
        const double e = p.b[m] - sigmoid(resid[m]);
        total += e * e;
      }
      return total / (2.0 * p.samples());
    }
    case ProblemKind::pl_quadratic: {
      const Eigen::ArrayXd diff = x.array() - p.center.array();
      return 0.5 * (p.curv.array() *
                    (diff.square() + p.noise_sd * p.noise_sd))
                       .sum();
    }
  }
  throw std::logic_error("unknown problem kind");
}

StepContext make_step_context(const Problem& p, const SolverConfig& cfg) {
  if (cfg.delay_max < 0)
    throw std::invalid_argument("delay_max must be nonnegative");
  if (cfg.metrics_stride < 0)
    throw std::invalid_argument("metrics_stride must be nonnegative");

  StepContext ctx;
  ctx.alphas = resolve_steplengths(cfg.steplength, p);
  ctx.dist = build_distribution(cfg.selection, p.L);
  ctx.block_policies.assign(p.part.blocks(), cfg.schedule);
  if (cfg.schedule.kind == BatchKind::geometric_pl) {
    if (!(p.pl_mu > 0.0))
      throw std::invalid_argument(
          "geometric_pl schedule needs a problem with a quadratic-growth "
          "constant");
    const double c = 2.0 - std::sqrt(3.0);
    for (int i = 0; i < p.part.blocks(); ++i) {
      const double q = cfg.schedule.pl_scale * c * c * p.pl_mu / p.L[i];
      if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("geometric_pl ratio for block " +
                                    std::to_string(i) + " leaves (0,1)");
      ctx.block_policies[i] = geometric_policy(1.0 - q);
    }
  }
  ctx.clock = cfg.clock;
  ctx.batch_cap = cfg.batch_cap;
  ctx.delay_max = cfg.delay_max;
  ctx.metrics_stride = cfg.metrics_stride;
  return ctx;
}

SolverState make_solver_state(const Problem& p, const SolverConfig& cfg,
                              const StepContext& ctx,
                              const Eigen::VectorXd& x0) {
  if (x0.size() != p.dimension())
    throw std::invalid_argument("initial point has length " +
                                std::to_string(x0.size()) + ", expected " +
                                std::to_string(p.dimension()));
  SolverState st(cfg.seed);
  st.x = x0;
  st.clocks = make_clocks(p.part.blocks());
  if (ctx.delay_max > 0) st.ring.assign(ctx.delay_max + 1, x0);
  st.cache.init(p, x0);
  st.regvals.resize(p.part.blocks());
  st.reg_total = 0.0;
  for (int i = 0; i < p.part.blocks(); ++i) {
    st.regvals[i] = reg_value(
        p.regs[i], x0.segment(p.part.offsets[i], p.part.dims[i]));
    st.reg_total += st.regvals[i];
  }
  return st;
}

IterRow async_vr_step(const Problem& p, const StepContext& ctx,
                      SolverState& st) {
  const std::uint64_t k = st.clocks.k;
  const int i = draw_block(ctx.dist, st.rng);
  const int off = p.part.offsets[i];
  const int di = p.part.dims[i];

  const Eigen::VectorXd* base = &st.x;
  if (ctx.delay_max > 0) {
    const std::uint64_t span =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(ctx.delay_max), k);
    const std::uint64_t d = st.rng.uniform_int(span + 1);
    base = &st.ring[(k - d) % st.ring.size()];
  }

  Eigen::VectorXd g;
  std::uint64_t draws = 0;
  const BatchPolicy& pol = ctx.block_policies[i];
  if (pol.kind == BatchKind::full) {
    g = full_gradient_block(p, *base, i);
    draws = p.kind == ProblemKind::pl_quadratic
                ? 1
                : static_cast<std::uint64_t>(p.samples());
  } else {
    const std::uint64_t gamma =
        ctx.clock == ClockMode::local ? st.clocks.gamma[i] : k;
    std::uint64_t batch = batch_size(pol, gamma);
    if (ctx.batch_cap > 0 && batch > ctx.batch_cap) batch = ctx.batch_cap;
    GradientSample s = sample_gradient_block(p, *base, i, batch, st.rng);
    g = std::move(s.grad);
    draws = s.draws;
  }

  const double alpha = ctx.alphas[i];
  const Eigen::VectorXd old_block = st.x.segment(off, di);
  const Eigen::VectorXd new_block =
      prox(p.regs[i], old_block - alpha * g, alpha);

  st.cache.update(p, i, old_block, new_block);
  st.x.segment(off, di) = new_block;
  const double rv = reg_value(p.regs[i], new_block);
  st.reg_total += rv - st.regvals[i];
  st.regvals[i] = rv;

  record_selection(st.clocks, i);
  st.po += 1;
  st.sfo += draws;
  if (ctx.delay_max > 0) st.ring[st.clocks.k % st.ring.size()] = st.x;

  const double obj = st.cache.smooth(p, st.x) + st.reg_total;
  if (!std::isfinite(obj))
    throw std::runtime_error("solver diverged: objective became non-finite "
                             "at iteration " +
                             std::to_string(st.clocks.k) + " (block " +
                             std::to_string(i) + ")");

  IterRow row;
  row.k = st.clocks.k;
  row.block = i;
  row.batch = draws;
  row.po_calls = st.po;
  row.sfo_calls = st.sfo;
  row.objective = obj;
  row.gmap_sq = std::numeric_limits<double>::quiet_NaN();
  if (ctx.metrics_stride > 0 &&
      st.clocks.k % static_cast<std::uint64_t>(ctx.metrics_stride) == 0)
    row.gmap_sq = gradient_mapping(p, st.x, ctx.alphas).norm_sq;
  return row;
}

RunRecord run(const Problem& p, const SolverConfig& cfg,
              const Eigen::VectorXd& x0) {
  const StepContext ctx = make_step_context(p, cfg);
  SolverState st = make_solver_state(p, cfg, ctx, x0);

  std::uint64_t sfo_budget = 0;
  if (cfg.budget.kind == Budget::Kind::epochs) {
    if (cfg.budget.amount == 0)
      throw std::invalid_argument("epoch budget must be positive");
    if (p.kind == ProblemKind::pl_quadratic)
      throw std::invalid_argument(
          "epoch budgets need a finite sample set; use an iteration budget");
    sfo_budget = cfg.budget.amount * static_cast<std::uint64_t>(p.samples());
  }

  RunRecord rec;
  if (cfg.budget.kind == Budget::Kind::iterations)
    rec.rows.reserve(cfg.budget.amount + 1);

  IterRow first;
  first.objective = st.cache.smooth(p, st.x) + st.reg_total;
  first.gmap_sq = std::numeric_limits<double>::quiet_NaN();
  if (ctx.metrics_stride > 0)
    first.gmap_sq = gradient_mapping(p, st.x, ctx.alphas).norm_sq;
  rec.rows.push_back(first);

  const auto more = [&]() {
    return cfg.budget.kind == Budget::Kind::iterations
               ? st.clocks.k < cfg.budget.amount
               : st.sfo < sfo_budget;
  };
  while (more()) rec.rows.push_back(async_vr_step(p, ctx, st));

  rec.x_final = std::move(st.x);
  return rec;
}

RunRecord run(const Problem& p, const SolverConfig& cfg) {
  return run(p, cfg, Eigen::VectorXd::Zero(p.dimension()));
}

RunRecord run_bsg(const Problem& p, std::uint64_t minibatch, double alpha,
                  Budget budget, std::uint64_t seed, int metrics_stride) {
  SolverConfig cfg;
  cfg.steplength = {StepKind::fixed, alpha};
  cfg.schedule = constant_policy(minibatch);
  cfg.selection = SelectionKind::uniform;
  cfg.delay_max = 0;
  cfg.budget = budget;
  cfg.seed = seed;
  cfg.metrics_stride = metrics_stride;
  return run(p, cfg);
}

ReferenceSolution reference_optimum(const Problem& p, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("tolerance must be positive");

  const double alpha = 1.0 / global_lipschitz(p);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.dimension());

  ReferenceSolution out;
  out.certified = p.kind != ProblemKind::sigmoid_ls;
  out.fstar = objective(p, x);

  constexpr std::uint64_t kMaxIters = 1000000;
  Eigen::VectorXd xnew(p.dimension());
  for (std::uint64_t it = 1; it <= kMaxIters; ++it) {
    const Eigen::VectorXd grad = full_gradient(p, x);
    for (int i = 0; i < p.part.blocks(); ++i) {
      const int off = p.part.offsets[i];
      const int di = p.part.dims[i];
      xnew.segment(off, di) =
          prox(p.regs[i], x.segment(off, di) - alpha * grad.segment(off, di),
               alpha);
    }
    const double gnorm = (x - xnew).norm() / alpha;
    x.swap(xnew);
    out.fstar = std::min(out.fstar, objective(p, x));
    out.iterations = it;
    out.gmap_norm = gnorm;
    if (gnorm <= tol) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  return out;
}

}  // namespace bpsg
