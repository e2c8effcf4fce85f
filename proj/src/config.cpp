#include "bpsg/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "bpsg/schedules.hpp"
#include "bpsg/solver.hpp"

namespace bpsg {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t j = 0; j < line.size(); ++j) {
    if (line[j] == '"') quoted = !quoted;
    else if (line[j] == '#' && !quoted) return line.substr(0, j);
  }
  return line;
}

std::string unquote(const std::string& key, const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return v.substr(1, v.size() - 2);
  if (!v.empty() && (v.front() == '"' || v.back() == '"'))
    throw std::invalid_argument("key '" + key + "': unbalanced quotes");
  return v;
}

long long parse_ll(const std::string& key, const std::string& v) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("key '" + key + "': '" + v +
                                "' is not an integer");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  const long long out = parse_ll(key, v);
  if (out < -1 || out > 1000000000)
    throw std::invalid_argument("key '" + key + "': " + v + " is out of range");
  return static_cast<int>(out);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("key '" + key + "': '" + v +
                                "' is not a nonnegative integer");
  return out;
}

double parse_dbl(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("key '" + key + "': '" + v +
                                "' is not a number");
  return out;
}

std::string fmt_dbl(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void set_arm_key(ExperimentConfig& cfg, const std::string& key,
                 const std::string& rest, const std::string& value) {
  const auto dot = rest.find('.');
  if (dot == std::string::npos)
    throw std::invalid_argument("key '" + key +
                                "': expected arm.<index>.<field>");
  const std::string idx_text = rest.substr(0, dot);
  const std::string field = rest.substr(dot + 1);
  const long long idx = parse_ll(key, idx_text);
  if (idx < 0 || idx > static_cast<long long>(cfg.arms.size()))
    throw std::invalid_argument("key '" + key + "': arm indices must be used "
                                "in order starting from 0");
  if (idx == static_cast<long long>(cfg.arms.size())) cfg.arms.emplace_back();
  ArmConfig& arm = cfg.arms[static_cast<std::size_t>(idx)];

  if (field == "name") arm.name = value;
  else if (field == "schedule") arm.schedule = value;
  else if (field == "steplength") arm.steplength = value;
  else if (field == "selection") arm.selection = value;
  else if (field == "clock") arm.clock = value;
  else if (field == "batch_cap") arm.batch_cap = value;
  else if (field == "delay_max") arm.delay_max = parse_int(key, value);
  else if (field == "algo") arm.algo = value;
  else if (field == "batch") arm.batch = parse_u64(key, value);
  else
    throw std::invalid_argument("unknown key '" + key + "'");
}

void set_key(ExperimentConfig& cfg, const std::string& key,
             const std::string& value) {
  if (key.rfind("arm.", 0) == 0) {
    set_arm_key(cfg, key, key.substr(4), value);
    return;
  }
  if (key == "problem") cfg.problem = value;
  else if (key == "data") cfg.data = value;
  else if (key == "samples") cfg.samples = parse_int(key, value);
  else if (key == "dim") cfg.dim = parse_int(key, value);
  else if (key == "blocks") cfg.blocks = parse_int(key, value);
  else if (key == "density") cfg.density = parse_dbl(key, value);
  else if (key == "noise_sd") cfg.noise_sd = parse_dbl(key, value);
  else if (key == "lambda") cfg.lambda = parse_dbl(key, value);
  else if (key == "block_variances") cfg.block_variances = value;
  else if (key == "target_lip_ratio")
    cfg.target_lip_ratio = parse_dbl(key, value);
  else if (key == "pl_mu") cfg.pl_mu = parse_dbl(key, value);
  else if (key == "pl_spread") cfg.pl_spread = parse_dbl(key, value);
  else if (key == "pl_noise_sd") cfg.pl_noise_sd = parse_dbl(key, value);
  else if (key == "pl_target_sd") cfg.pl_target_sd = parse_dbl(key, value);
  else if (key == "steplength") cfg.steplength = value;
  else if (key == "schedule") cfg.schedule = value;
  else if (key == "selection") cfg.selection = value;
  else if (key == "clock") cfg.clock = value;
  else if (key == "batch_cap") cfg.batch_cap = value;
  else if (key == "delay_max") cfg.delay_max = parse_int(key, value);
  else if (key == "budget_iterations") {
    cfg.budget_iterations = parse_u64(key, value);
    cfg.budget_epochs = 0;
  } else if (key == "budget_epochs") {
    cfg.budget_epochs = parse_u64(key, value);
    cfg.budget_iterations = 0;
  } else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "trajectories") cfg.trajectories = parse_int(key, value);
  else if (key == "metrics_stride") cfg.metrics_stride = parse_int(key, value);
  else if (key == "opt_tol") cfg.opt_tol = parse_dbl(key, value);
  else if (key == "threads") cfg.threads = parse_int(key, value);
  else if (key == "out") cfg.out = value;
  else
    throw std::invalid_argument("unknown key '" + key + "'");
}

void check_spec(const std::string& key, const std::string& value,
                void (*probe)(const std::string&)) {
  try {
    probe(value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("key '" + key + "': " + e.what());
  }
}

void probe_schedule(const std::string& v) { (void)parse_batch_policy(v); }
void probe_steplength(const std::string& v) { (void)parse_steplength(v); }

void probe_selection(const std::string& v) {
  if (v != "uniform" && v != "lipschitz")
    throw std::invalid_argument("'" + v +
                                "' is not one of uniform, lipschitz");
}

void probe_clock(const std::string& v) {
  if (v != "local" && v != "global")
    throw std::invalid_argument("'" + v + "' is not one of local, global");
}

void probe_batch_cap(const std::string& v) {
  if (v == "none" || v == "dataset") return;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || out == 0)
    throw std::invalid_argument(
        "'" + v + "' is not one of none, dataset, or a positive integer");
}

}  // namespace

std::vector<double> parse_variance_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok =
        trim(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                         : comma - pos));
    if (tok.empty())
      throw std::invalid_argument("block_variances entry is empty");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("block_variances entry '" + tok +
                                  "' is not a number");
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("block_variances entry '" + tok +
                                  "' must be positive");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line =
        text.substr(pos, nl == std::string::npos ? std::string::npos
                                                 : nl - pos);
    ++line_no;
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": missing key");
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate key '" + key + "'");
    set_key(cfg, key, unquote(key, raw));
  }
  if (seen.count("budget_iterations") && seen.count("budget_epochs"))
    throw std::invalid_argument(
        "budget_iterations and budget_epochs are mutually exclusive");
  validate_config(cfg);
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override '" + assignment +
                                "': expected key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string raw = trim(assignment.substr(eq + 1));
  if (key.empty())
    throw std::invalid_argument("override '" + assignment + "': missing key");
  set_key(cfg, key, unquote(key, raw));
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.problem != "lasso" && cfg.problem != "sigmoid" &&
      cfg.problem != "pl_quadratic")
    throw std::invalid_argument(
        "key 'problem': '" + cfg.problem +
        "' is not one of lasso, sigmoid, pl_quadratic");
  if (!cfg.data.empty() && cfg.problem != "sigmoid")
    throw std::invalid_argument(
        "key 'data': file input is only supported for the sigmoid problem");
  if (cfg.samples < 1)
    throw std::invalid_argument("key 'samples': must be at least 1");
  if (cfg.dim < 1) throw std::invalid_argument("key 'dim': must be at least 1");
  if (cfg.blocks < 1)
    throw std::invalid_argument("key 'blocks': must be at least 1");
  if (cfg.data.empty() && cfg.blocks > cfg.dim)
    throw std::invalid_argument("key 'blocks': more blocks than coordinates");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0))
    throw std::invalid_argument("key 'density': must lie in (0,1]");
  if (!(cfg.noise_sd >= 0.0) || !std::isfinite(cfg.noise_sd))
    throw std::invalid_argument("key 'noise_sd': must be nonnegative");
  if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda))
    throw std::invalid_argument("key 'lambda': must be nonnegative");
  if (!cfg.block_variances.empty()) {
    const std::vector<double> v = parse_variance_list(cfg.block_variances);
    if (static_cast<int>(v.size()) != cfg.blocks)
      throw std::invalid_argument(
          "key 'block_variances': expected one entry per block");
    if (cfg.target_lip_ratio > 0.0)
      throw std::invalid_argument(
          "key 'target_lip_ratio': choose either block_variances or "
          "target_lip_ratio, not both");
  }
  if (cfg.target_lip_ratio != 0.0) {
    if (!(cfg.target_lip_ratio >= 1.0) || !std::isfinite(cfg.target_lip_ratio))
      throw std::invalid_argument(
          "key 'target_lip_ratio': must be at least 1");
    if (cfg.problem != "lasso")
      throw std::invalid_argument(
          "key 'target_lip_ratio': only supported for the lasso problem");
  }
  if (!(cfg.pl_mu > 0.0) || !std::isfinite(cfg.pl_mu))
    throw std::invalid_argument("key 'pl_mu': must be positive");
  if (!(cfg.pl_spread >= 1.0) || !std::isfinite(cfg.pl_spread))
    throw std::invalid_argument("key 'pl_spread': must be at least 1");
  if (!(cfg.pl_noise_sd >= 0.0) || !std::isfinite(cfg.pl_noise_sd))
    throw std::invalid_argument("key 'pl_noise_sd': must be nonnegative");
  if (!(cfg.pl_target_sd >= 0.0) || !std::isfinite(cfg.pl_target_sd))
    throw std::invalid_argument("key 'pl_target_sd': must be nonnegative");

  check_spec("steplength", cfg.steplength, probe_steplength);
  check_spec("schedule", cfg.schedule, probe_schedule);
  check_spec("selection", cfg.selection, probe_selection);
  check_spec("clock", cfg.clock, probe_clock);
  check_spec("batch_cap", cfg.batch_cap, probe_batch_cap);
  if (cfg.delay_max < 0)
    throw std::invalid_argument("key 'delay_max': must be nonnegative");

  const bool has_iters = cfg.budget_iterations > 0;
  const bool has_epochs = cfg.budget_epochs > 0;
  if (has_iters && has_epochs)
    throw std::invalid_argument(
        "budget_iterations and budget_epochs are mutually exclusive");
  if (!has_iters && !has_epochs)
    throw std::invalid_argument(
        "one of budget_iterations or budget_epochs must be positive");
  if (cfg.problem == "pl_quadratic") {
    if (has_epochs)
      throw std::invalid_argument(
          "key 'budget_epochs': pl_quadratic has no sample set; use "
          "budget_iterations");
    if (cfg.batch_cap == "dataset")
      throw std::invalid_argument(
          "key 'batch_cap': pl_quadratic has no sample set");
  }

  if (cfg.trajectories < 1)
    throw std::invalid_argument("key 'trajectories': must be at least 1");
  if (cfg.metrics_stride < 0)
    throw std::invalid_argument("key 'metrics_stride': must be nonnegative");
  if (!(cfg.opt_tol > 0.0) || !std::isfinite(cfg.opt_tol))
    throw std::invalid_argument("key 'opt_tol': must be positive");
  if (cfg.threads < 0)
    throw std::invalid_argument("key 'threads': must be nonnegative");
  if (cfg.out.empty()) throw std::invalid_argument("key 'out': must be set");

  std::set<std::string> names;
  for (std::size_t a = 0; a < cfg.arms.size(); ++a) {
    const ArmConfig& arm = cfg.arms[a];
    const std::string prefix = "arm." + std::to_string(a) + ".";
    if (arm.name.empty())
      throw std::invalid_argument("key '" + prefix + "name': must be set");
    if (!names.insert(arm.name).second)
      throw std::invalid_argument("key '" + prefix +
                                  "name': duplicate arm name '" + arm.name +
                                  "'");
    if (!arm.schedule.empty())
      check_spec(prefix + "schedule", arm.schedule, probe_schedule);
    if (!arm.steplength.empty())
      check_spec(prefix + "steplength", arm.steplength, probe_steplength);
    if (!arm.selection.empty())
      check_spec(prefix + "selection", arm.selection, probe_selection);
    if (!arm.clock.empty())
      check_spec(prefix + "clock", arm.clock, probe_clock);
    if (!arm.batch_cap.empty())
      check_spec(prefix + "batch_cap", arm.batch_cap, probe_batch_cap);
    if (arm.delay_max < -1)
      throw std::invalid_argument("key '" + prefix +
                                  "delay_max': must be nonnegative");
    if (arm.algo != "" && arm.algo != "bsg")
      throw std::invalid_argument("key '" + prefix + "algo': '" + arm.algo +
                                  "' is not one of bsg");
    if (arm.algo == "bsg") {
      if (arm.batch == 0)
        throw std::invalid_argument("key '" + prefix +
                                    "batch': bsg arms need a batch size");
      if (!arm.schedule.empty())
        throw std::invalid_argument(
            "key '" + prefix +
            "schedule': bsg arms use a fixed batch; leave schedule empty");
    } else if (arm.batch != 0) {
      throw std::invalid_argument("key '" + prefix +
                                  "batch': only used when algo = bsg");
    }
  }

  auto is_pl_sched = [](const std::string& s) {
    return parse_batch_policy(s).kind == BatchKind::geometric_pl;
  };
  bool pl_sched = is_pl_sched(cfg.schedule);
  for (const ArmConfig& arm : cfg.arms)
    if (!arm.schedule.empty() && is_pl_sched(arm.schedule)) pl_sched = true;
  if (pl_sched && cfg.problem != "pl_quadratic")
    throw std::invalid_argument(
        "key 'schedule': geometric_pl needs the pl_quadratic problem");
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  auto put = [&](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  put("problem", quoted(cfg.problem));
  if (!cfg.data.empty()) put("data", quoted(cfg.data));
  put("samples", std::to_string(cfg.samples));
  put("dim", std::to_string(cfg.dim));
  put("blocks", std::to_string(cfg.blocks));
  put("density", fmt_dbl(cfg.density));
  put("noise_sd", fmt_dbl(cfg.noise_sd));
  put("lambda", fmt_dbl(cfg.lambda));
  if (!cfg.block_variances.empty())
    put("block_variances", quoted(cfg.block_variances));
  if (cfg.target_lip_ratio != 0.0)
    put("target_lip_ratio", fmt_dbl(cfg.target_lip_ratio));
  if (cfg.problem == "pl_quadratic") {
    put("pl_mu", fmt_dbl(cfg.pl_mu));
    put("pl_spread", fmt_dbl(cfg.pl_spread));
    put("pl_noise_sd", fmt_dbl(cfg.pl_noise_sd));
    put("pl_target_sd", fmt_dbl(cfg.pl_target_sd));
  }
  put("steplength", quoted(cfg.steplength));
  put("schedule", quoted(cfg.schedule));
  put("selection", quoted(cfg.selection));
  put("clock", quoted(cfg.clock));
  put("batch_cap", quoted(cfg.batch_cap));
  put("delay_max", std::to_string(cfg.delay_max));
  if (cfg.budget_iterations > 0)
    put("budget_iterations", std::to_string(cfg.budget_iterations));
  else
    put("budget_epochs", std::to_string(cfg.budget_epochs));
  put("seed", std::to_string(cfg.seed));
  put("trajectories", std::to_string(cfg.trajectories));
  put("metrics_stride", std::to_string(cfg.metrics_stride));
  put("opt_tol", fmt_dbl(cfg.opt_tol));
  put("threads", std::to_string(cfg.threads));
  put("out", quoted(cfg.out));
  for (std::size_t a = 0; a < cfg.arms.size(); ++a) {
    const ArmConfig& arm = cfg.arms[a];
    const std::string prefix = "arm." + std::to_string(a) + ".";
    put(prefix + "name", quoted(arm.name));
    if (!arm.schedule.empty()) put(prefix + "schedule", quoted(arm.schedule));
    if (!arm.steplength.empty())
      put(prefix + "steplength", quoted(arm.steplength));
    if (!arm.selection.empty())
      put(prefix + "selection", quoted(arm.selection));
    if (!arm.clock.empty()) put(prefix + "clock", quoted(arm.clock));
    if (!arm.batch_cap.empty())
      put(prefix + "batch_cap", quoted(arm.batch_cap));
    if (arm.delay_max >= 0)
      put(prefix + "delay_max", std::to_string(arm.delay_max));
    if (!arm.algo.empty()) put(prefix + "algo", quoted(arm.algo));
    if (arm.batch > 0) put(prefix + "batch", std::to_string(arm.batch));
  }
  return out;
}

std::vector<std::string> preset_names() {
  return {"table2",        "table3", "table5",        "pl_geometric",
          "pl_polynomial", "delay",  "classification"};
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig cfg;
  cfg.trajectories = 50;
  cfg.metrics_stride = 0;
  cfg.seed = 1;

  auto lasso_base = [&](int samples, int dim) {
    cfg.problem = "lasso";
    cfg.samples = samples;
    cfg.dim = dim;
    cfg.blocks = 10;
    cfg.density = 0.1;
    cfg.noise_sd = 0.01;
    cfg.lambda = 0.1;
    cfg.steplength = "fixed:0.01";
    cfg.schedule = "geometric:0.95";
    cfg.selection = "uniform";
    cfg.clock = "global";
    cfg.batch_cap = "dataset";
    cfg.budget_epochs = 50;
  };
  auto pl_base = [&] {
    cfg.problem = "pl_quadratic";
    cfg.dim = 20;
    cfg.blocks = 4;
    cfg.pl_mu = 1.0;
    cfg.pl_spread = 4.0;
    cfg.pl_noise_sd = 0.005;
    cfg.pl_target_sd = 1.0;
    cfg.lambda = 0.05;
    cfg.steplength = "pl_optimal";
    cfg.selection = "uniform";
    cfg.clock = "local";
    cfg.batch_cap = "none";
    cfg.trajectories = 30;
    cfg.opt_tol = 1e-12;
  };
  auto arm = [&](const std::string& arm_name, const std::string& schedule) {
    ArmConfig a;
    a.name = arm_name;
    a.schedule = schedule;
    cfg.arms.push_back(a);
  };

  if (name == "table2") {
    lasso_base(1000, 400);
    cfg.out = "table2.csv";
    arm("geo85", "geometric:0.85");
    arm("geo90", "geometric:0.9");
    arm("geo95", "geometric:0.95");
  } else if (name == "table3") {
    lasso_base(2000, 200);
    cfg.steplength = "fixed:0.03";
    cfg.out = "table3.csv";
    // The growing-batch arms run their published schedule (per-block clocks,
    // uncapped); the fixed-batch baselines just split the same sample budget.
    arm("geo95", "geometric:0.95");
    cfg.arms.back().clock = "local";
    cfg.arms.back().batch_cap = "none";
    arm("geo98", "geometric:0.98");
    cfg.arms.back().clock = "local";
    cfg.arms.back().batch_cap = "none";
    ArmConfig b16;
    b16.name = "bsg16";
    b16.algo = "bsg";
    b16.batch = 16;
    cfg.arms.push_back(b16);
    ArmConfig b64;
    b64.name = "bsg64";
    b64.algo = "bsg";
    b64.batch = 64;
    cfg.arms.push_back(b64);
  } else if (name == "table5") {
    lasso_base(1000, 200);
    cfg.target_lip_ratio = 1.47;
    // Lighter l1 weight keeps the sampling-noise floor below the identical
    // arm's 100-epoch transient, so the steplength effect stays visible.
    cfg.lambda = 0.01;
    cfg.selection = "lipschitz";
    // Steplengths near 1/L_i need batches well above 1 from the start to keep
    // the multiplicative sampling noise contractive, so this comparison runs a
    // flat large batch instead of a growing schedule.
    cfg.schedule = "constant:400";
    cfg.steplength = "global_fraction:1.28";
    cfg.clock = "local";
    cfg.batch_cap = "none";
    cfg.budget_epochs = 100;
    cfg.out = "table5.csv";
    ArmConfig ident;
    ident.name = "identical";
    ident.steplength = "global_fraction:1.28";
    cfg.arms.push_back(ident);
    ArmConfig blockwise;
    blockwise.name = "blockwise";
    blockwise.steplength = "inverse";
    cfg.arms.push_back(blockwise);
  } else if (name == "pl_geometric") {
    pl_base();
    cfg.schedule = "geometric_pl:0.5";
    cfg.budget_iterations = 400;
    cfg.out = "pl_geometric.csv";
  } else if (name == "pl_polynomial") {
    pl_base();
    cfg.schedule = "polynomial:1";
    cfg.budget_iterations = 5000;
    cfg.out = "pl_polynomial.csv";
    arm("poly1", "polynomial:1");
    arm("poly2", "polynomial:2");
  } else if (name == "delay") {
    lasso_base(2000, 200);
    // Exact per-block gradients isolate the staleness effect: with sampled
    // gradients the delay signal drowns in batch noise at this problem size.
    cfg.schedule = "full";
    cfg.steplength = "fixed:0.8";
    cfg.clock = "local";
    cfg.batch_cap = "none";
    cfg.budget_epochs = 0;
    cfg.budget_iterations = 200;
    cfg.out = "delay.csv";
    for (int d : {0, 5, 20}) {
      ArmConfig a;
      a.name = "d" + std::to_string(d);
      a.delay_max = d;
      cfg.arms.push_back(a);
    }
  } else if (name == "classification") {
    cfg.problem = "sigmoid";
    cfg.samples = 2000;
    cfg.dim = 100;
    cfg.blocks = 10;
    cfg.lambda = 0.0;
    cfg.steplength = "fixed:0.2";
    cfg.schedule = "constant:40";
    cfg.selection = "uniform";
    cfg.clock = "local";
    cfg.batch_cap = "none";
    cfg.budget_epochs = 2;
    cfg.trajectories = 10;
    cfg.opt_tol = 1e-6;
    cfg.out = "classification.csv";
    arm("const2pct", "constant:40");
    arm("const5pct", "constant:100");
    arm("linear", "polynomial:1");
    arm("quadratic", "power:1");
  } else {
    std::string known;
    for (const std::string& nm : preset_names())
      known += (known.empty() ? "" : ", ") + nm;
    throw std::invalid_argument("unknown preset '" + name + "'; known: " +
                                known);
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace bpsg
