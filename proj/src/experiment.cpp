#include "bpsg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bpsg/rng.hpp"
#include "bpsg/schedules.hpp"

namespace bpsg {

namespace {

constexpr std::uint64_t kDataSalt = 0xa0761d6478bd642fULL;

Rng data_rng(const ExperimentConfig& cfg) {
  return Rng(mix_seed(cfg.seed ^ kDataSalt));
}

std::string fmt_value(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

Problem lasso_with_variances(const ExperimentConfig& cfg,
                             const std::vector<double>& variances) {
  Rng rng = data_rng(cfg);
  return gen_lasso(cfg.samples, cfg.dim, cfg.blocks, cfg.density,
                   cfg.noise_sd, cfg.lambda, variances, rng);
}

}  // namespace

std::vector<double> find_block_variances(const ExperimentConfig& cfg,
                                         double target_ratio) {
  const int n = cfg.blocks;
  auto ramp = [&](double endpoint) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
      v[i] = n == 1 ? endpoint
                    : 1.0 + (endpoint - 1.0) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
    return v;
  };
  auto ratio_at = [&](double endpoint) {
    const Problem p = lasso_with_variances(cfg, ramp(endpoint));
    return p.L.maxCoeff() / p.L.mean();
  };

  double lo = 1.0;
  if (ratio_at(lo) >= target_ratio) return ramp(lo);
  double hi = 2.0;
  int doublings = 0;
  while (ratio_at(hi) < target_ratio) {
    hi *= 2.0;
    if (++doublings > 50)
      throw std::runtime_error("variance search failed to bracket the "
                               "requested Lipschitz ratio");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ratio_at(mid) < target_ratio)
      lo = mid;
    else
      hi = mid;
  }
  return ramp(hi);
}

Problem build_problem(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.problem == "lasso") {
    std::vector<double> variances;
    if (!cfg.block_variances.empty())
      variances = parse_variance_list(cfg.block_variances);
    else if (cfg.target_lip_ratio > 0.0)
      variances = find_block_variances(cfg, cfg.target_lip_ratio);
    return lasso_with_variances(cfg, variances);
  }
  if (cfg.problem == "sigmoid") {
    if (!cfg.data.empty()) {
      const auto [features, labels] = load_libsvm(cfg.data);
      return gen_sigmoid_ls(features, labels, cfg.blocks);
    }
    Rng rng = data_rng(cfg);
    return gen_sigmoid_synth(cfg.samples, cfg.dim, cfg.blocks, rng);
  }
  Rng rng = data_rng(cfg);
  return gen_pl_quadratic(cfg.dim, cfg.blocks, cfg.pl_mu, cfg.pl_spread,
                          cfg.lambda, rng, cfg.pl_target_sd, cfg.pl_noise_sd);
}

SolverConfig arm_solver_config(const ExperimentConfig& cfg,
                               const ArmConfig& arm, const Problem& p) {
  const std::string steplength =
      arm.steplength.empty() ? cfg.steplength : arm.steplength;
  const std::string selection =
      arm.selection.empty() ? cfg.selection : arm.selection;
  const std::string clock = arm.clock.empty() ? cfg.clock : arm.clock;
  const std::string cap = arm.batch_cap.empty() ? cfg.batch_cap : arm.batch_cap;

  SolverConfig scfg;
  scfg.steplength = parse_steplength(steplength);
  if (arm.algo == "bsg") {
    scfg.schedule = constant_policy(arm.batch);
    scfg.selection = SelectionKind::uniform;
  } else {
    scfg.schedule =
        parse_batch_policy(arm.schedule.empty() ? cfg.schedule : arm.schedule);
    scfg.selection = selection == "lipschitz" ? SelectionKind::lipschitz
                                              : SelectionKind::uniform;
  }
  scfg.clock = clock == "global" ? ClockMode::global : ClockMode::local;
  if (cap == "none") {
    scfg.batch_cap = 0;
  } else if (cap == "dataset") {
    scfg.batch_cap = static_cast<std::uint64_t>(p.samples());
  } else {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(cap.data(), cap.data() + cap.size(),
                                     value);
    if (ec != std::errc() || ptr != cap.data() + cap.size() || value == 0)
      throw std::invalid_argument("batch_cap '" + cap + "' is not one of "
                                  "none, dataset, or a positive integer");
    scfg.batch_cap = value;
  }
  scfg.delay_max = arm.delay_max >= 0 ? arm.delay_max : cfg.delay_max;
  if (cfg.budget_iterations > 0)
    scfg.budget = {Budget::Kind::iterations, cfg.budget_iterations};
  else
    scfg.budget = {Budget::Kind::epochs, cfg.budget_epochs};
  scfg.seed = cfg.seed;
  scfg.metrics_stride = cfg.metrics_stride;
  return scfg;
}

std::vector<RunRecord> run_trajectories(const Problem& p,
                                        const SolverConfig& base, int T,
                                        int threads) {
  if (T < 1) throw std::invalid_argument("need at least one trajectory");
  std::vector<RunRecord> recs(T);
  std::vector<std::string> errors(T);

  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, T));

  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= T) return;
      try {
        SolverConfig scfg = base;
        scfg.seed = base.seed + static_cast<std::uint64_t>(t);
        recs[t] = run(p, scfg);
      } catch (const std::exception& e) {
        errors[t] = e.what()[0] ? e.what() : "unknown error";
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  for (int t = 0; t < T; ++t)
    if (!errors[t].empty())
      throw std::runtime_error("trajectory " + std::to_string(t) + ": " +
                               errors[t]);
  return recs;
}

std::string arm_csv_path(const std::string& out, const std::string& arm_name) {
  if (arm_name.empty()) return out;
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + "_" + arm_name;
  return out.substr(0, dot) + "_" + arm_name + out.substr(dot);
}

void write_csv(const std::string& path, const std::vector<RunRecord>& records,
               double fstar) {
  if (records.empty()) throw std::invalid_argument("no trajectories to write");
  std::size_t len = records.front().rows.size();
  for (const RunRecord& r : records) len = std::min(len, r.rows.size());
  const double T = static_cast<double>(records.size());

  std::ofstream file(path);
  if (!file)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  file << "k,po_calls,sfo_calls_mean,gap_mean,gap_std,gmap_sq_mean,"
          "gmap_sq_std\n";

  for (std::size_t j = 0; j < len; ++j) {
    double sfo = 0.0, gap = 0.0, gap2 = 0.0, gm = 0.0, gm2 = 0.0;
    bool gm_ok = true;
    for (const RunRecord& r : records) {
      const IterRow& row = r.rows[j];
      sfo += static_cast<double>(row.sfo_calls);
      const double g = row.objective - fstar;
      gap += g;
      gap2 += g * g;
      if (std::isfinite(row.gmap_sq)) {
        gm += row.gmap_sq;
        gm2 += row.gmap_sq * row.gmap_sq;
      } else {
        gm_ok = false;
      }
    }
    sfo /= T;
    gap /= T;
    const double gap_var =
        records.size() > 1 ? std::max(0.0, (gap2 - T * gap * gap) / (T - 1))
                           : 0.0;
    double gm_mean = std::numeric_limits<double>::quiet_NaN();
    double gm_std = std::numeric_limits<double>::quiet_NaN();
    if (gm_ok) {
      gm /= T;
      gm_mean = gm;
      gm_std = records.size() > 1
                   ? std::sqrt(std::max(0.0, (gm2 - T * gm * gm) / (T - 1)))
                   : 0.0;
    }
    const IterRow& first = records.front().rows[j];
    file << first.k << ',' << first.po_calls << ',' << fmt_value(sfo) << ','
         << fmt_value(gap) << ',' << fmt_value(std::sqrt(gap_var)) << ','
         << fmt_value(gm_mean) << ',' << fmt_value(gm_std) << '\n';
  }
  file.flush();
  if (!file)
    throw std::runtime_error("failed while writing '" + path + "'");
}

std::vector<SeriesPoint> read_csv_column(const std::string& path,
                                         const std::string& column) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");

  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      out.push_back(line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };

  std::string line;
  if (!std::getline(file, line))
    throw std::runtime_error("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line);
  int k_idx = -1, col_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "k") k_idx = static_cast<int>(j);
    if (header[j] == column) col_idx = static_cast<int>(j);
  }
  if (k_idx < 0)
    throw std::runtime_error("'" + path + "' has no column 'k'");
  if (col_idx < 0)
    throw std::runtime_error("'" + path + "' has no column '" + column + "'");

  std::vector<SeriesPoint> out;
  int line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size())
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": wrong number of columns");
    SeriesPoint pt;
    auto parse_cell = [&](const std::string& cell, auto& dst) {
      auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), dst);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                 ": '" + cell + "' is not a number");
    };
    parse_cell(cells[static_cast<std::size_t>(k_idx)], pt.k);
    parse_cell(cells[static_cast<std::size_t>(col_idx)], pt.value);
    if (std::isfinite(pt.value)) out.push_back(pt);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Problem p = build_problem(cfg);
  const ReferenceSolution ref = reference_optimum(p, cfg.opt_tol);

  ExperimentResult result;
  result.fstar = ref.fstar;
  result.fstar_certified = ref.certified;
  result.fstar_near_zero = std::abs(ref.fstar) <= 1e-12;

  std::vector<ArmConfig> arms = cfg.arms;
  if (arms.empty()) arms.emplace_back();  // single unnamed arm = base config

  for (const ArmConfig& arm : arms) {
    const auto t0 = std::chrono::steady_clock::now();
    const SolverConfig scfg = arm_solver_config(cfg, arm, p);
    const std::vector<RunRecord> recs =
        run_trajectories(p, scfg, cfg.trajectories, cfg.threads);

    ArmSummary summary;
    summary.name = arm.name;
    summary.csv_path = arm_csv_path(cfg.out, arm.name);
    write_csv(summary.csv_path, recs, ref.fstar);

    std::size_t len = recs.front().rows.size();
    for (const RunRecord& r : recs) len = std::min(len, r.rows.size());
    double gap = 0.0, po = 0.0, sfo = 0.0;
    for (const RunRecord& r : recs) {
      gap += r.rows[len - 1].objective - ref.fstar;
      po += static_cast<double>(r.rows.back().po_calls);
      sfo += static_cast<double>(r.rows.back().sfo_calls);
    }
    const double T = static_cast<double>(recs.size());
    summary.final_gap = gap / T;
    summary.final_rel_err = result.fstar_near_zero
                                ? summary.final_gap
                                : summary.final_gap / std::abs(ref.fstar);
    summary.po_mean = po / T;
    summary.sfo_mean = sfo / T;
    summary.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    result.arms.push_back(summary);
  }

  result.script_path = cfg.out + ".gp";
  std::ofstream script(result.script_path);
  if (!script)
    throw std::runtime_error("cannot open '" + result.script_path +
                             "' for writing");
  script << "set datafile separator ','\n"
         << "set logscale y\n"
         << "set xlabel 'iteration k'\n"
         << "set ylabel 'mean objective gap'\n"
         << "plot ";
  for (std::size_t a = 0; a < result.arms.size(); ++a) {
    const std::string title =
        result.arms[a].name.empty() ? "run" : result.arms[a].name;
    script << (a ? ", \\\n     " : "") << "'" << result.arms[a].csv_path
           << "' using 1:4 with lines title '" << title << "'";
  }
  script << '\n';
  script.flush();
  if (!script)
    throw std::runtime_error("failed while writing '" + result.script_path +
                             "'");
  return result;
}

}  // namespace bpsg
