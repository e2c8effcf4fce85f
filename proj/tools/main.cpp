#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpsg/config.hpp"
#include "bpsg/experiment.hpp"
#include "bpsg/metrics.hpp"
#include "bpsg/solver.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

void apply_common(bpsg::ExperimentConfig& cfg, bool has_seed,
                  std::uint64_t seed, const std::string& out,
                  const std::vector<std::string>& overrides) {
  if (has_seed) cfg.seed = seed;
  if (!out.empty()) cfg.out = out;
  for (const std::string& spec : overrides) bpsg::apply_override(cfg, spec);
  bpsg::validate_config(cfg);
}

void run_and_report(const bpsg::ExperimentConfig& cfg) {
  const bpsg::ExperimentResult result = bpsg::run_experiment(cfg);
  std::printf("F* = %.12g (%s%s)\n", result.fstar,
              result.fstar_certified ? "certified" : "best found, nonconvex",
              result.fstar_near_zero ? "; near zero, errors are absolute"
                                     : "");
  for (const bpsg::ArmSummary& arm : result.arms) {
    std::printf("arm %-12s rel_err %.6e  po %.1f  sfo_mean %.1f  %.2f s  -> %s\n",
                (arm.name.empty() ? "run" : arm.name).c_str(),
                arm.final_rel_err, arm.po_mean, arm.sfo_mean, arm.seconds,
                arm.csv_path.c_str());
  }
  std::printf("plot script: %s\n", result.script_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asynchronous block proximal stochastic gradient benchmark"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset_name, fit_file, fit_column;
  std::string fit_scale = "loglog";
  std::uint64_t seed = 0;
  std::uint64_t fit_from = 1, fit_to = 0;
  double tol = 1e-10;
  bool config_only = false;
  std::vector<std::string> overrides;

  CLI::App* run_cmd =
      app.add_subcommand("run", "run an experiment from a config file");
  run_cmd->add_option("--config", config_path, "config file")->required();
  CLI::Option* run_seed = run_cmd->add_option("--seed", seed, "base seed");
  run_cmd->add_option("--out", out_path, "output CSV path");
  run_cmd->add_option("overrides", overrides, "key=value overrides");

  CLI::App* preset_cmd =
      app.add_subcommand("preset", "run (or print) a named preset");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  CLI::Option* preset_seed = preset_cmd->add_option("--seed", seed, "base seed");
  preset_cmd->add_option("--out", out_path, "output CSV path");
  preset_cmd->add_flag("--config-only", config_only,
                       "print the config instead of running it");
  preset_cmd->add_option("overrides", overrides, "key=value overrides");

  CLI::App* fit_cmd =
      app.add_subcommand("rate-fit", "fit a decay rate to a CSV column");
  fit_cmd->add_option("file", fit_file, "CSV emitted by run")->required();
  fit_cmd->add_option("--column", fit_column, "column name")->required();
  fit_cmd->add_option("--scale", fit_scale, "loglog | semilog")
      ->check(CLI::IsMember({"loglog", "semilog"}));
  fit_cmd->add_option("--from", fit_from, "window start (iteration)");
  fit_cmd->add_option("--to", fit_to, "window end (iteration)")->required();

  CLI::App* opt_cmd = app.add_subcommand(
      "optimum", "solve the config's problem with the reference method");
  opt_cmd->add_option("--config", config_path, "config file")->required();
  opt_cmd->add_option("--tol", tol, "gradient-mapping norm tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run_cmd)) {
      bpsg::ExperimentConfig cfg = bpsg::parse_config(read_file(config_path));
      apply_common(cfg, run_seed->count() > 0, seed, out_path, overrides);
      run_and_report(cfg);
    } else if (app.got_subcommand(preset_cmd)) {
      bpsg::ExperimentConfig cfg = bpsg::preset(preset_name);
      apply_common(cfg, preset_seed->count() > 0, seed, out_path, overrides);
      if (config_only) {
        std::printf("# preset %s\n%s", preset_name.c_str(),
                    bpsg::serialize_config(cfg).c_str());
      } else {
        run_and_report(cfg);
      }
    } else if (app.got_subcommand(fit_cmd)) {
      const std::vector<bpsg::SeriesPoint> series =
          bpsg::read_csv_column(fit_file, fit_column);
      const bpsg::RateFit fit = bpsg::fit_rate(
          series, fit_from, fit_to,
          fit_scale == "loglog" ? bpsg::FitScale::loglog
                                : bpsg::FitScale::semilog);
      std::printf("slope %.6f  intercept %.6f  r2 %.6f  points %d\n",
                  fit.slope, fit.intercept, fit.r2, fit.points);
    } else if (app.got_subcommand(opt_cmd)) {
      const bpsg::ExperimentConfig cfg =
          bpsg::parse_config(read_file(config_path));
      const bpsg::Problem p = bpsg::build_problem(cfg);
      const bpsg::ReferenceSolution ref = bpsg::reference_optimum(p, tol);
      std::printf("F* = %.12g  converged %s  certified %s  iterations %llu  "
                  "||G|| %.3e\n",
                  ref.fstar, ref.converged ? "yes" : "no",
                  ref.certified ? "yes" : "no",
                  static_cast<unsigned long long>(ref.iterations),
                  ref.gmap_norm);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
