#include "bpsg/schedules.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace bpsg {

namespace {
constexpr std::uint64_t kBatchCap = 1ull << 62;

[[noreturn]] void throw_cap() {
  throw std::runtime_error(
      "budget exceeded: batch size crossed the 2^62 saturation cap");
}

double parse_number(const std::string& spec, const std::string& arg) {
  double v;
  const char* first = arg.data();
  const char* last = arg.data() + arg.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("batch policy '" + spec +
                                "': cannot parse parameter '" + arg + "'");
  return v;
}
}  // namespace

BlockClocks make_clocks(int n) {
  if (n < 1) throw std::invalid_argument("make_clocks: n must be >= 1");
  BlockClocks c;
  c.gamma.assign(n, 0);
  return c;
}

void record_selection(BlockClocks& clocks, int i) {
  if (i < 0 || i >= static_cast<int>(clocks.gamma.size()))
    throw std::invalid_argument("record_selection: block index out of range");
  clocks.gamma[i] += 1;
  clocks.k += 1;
}

BatchPolicy constant_policy(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("constant batch must be >= 1");
  BatchPolicy p;
  p.kind = BatchKind::constant;
  p.constant_n = n;
  return p;
}

BatchPolicy geometric_policy(double base) {
  if (!(base > 0.0) || !(base < 1.0))
    throw std::invalid_argument("geometric base must lie in (0,1)");
  BatchPolicy p;
  p.kind = BatchKind::geometric;
  p.base = base;
  return p;
}

BatchPolicy polynomial_policy(int degree) {
  if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  BatchPolicy p;
  p.kind = BatchKind::polynomial;
  p.degree = degree;
  return p;
}

BatchPolicy power_policy(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("power delta must be > 0");
  BatchPolicy p;
  p.kind = BatchKind::power;
  p.delta = delta;
  return p;
}

BatchPolicy full_policy() {
  BatchPolicy p;
  p.kind = BatchKind::full;
  return p;
}

BatchPolicy geometric_pl_policy(double scale) {
  if (!(scale > 0.0) || !(scale < 1.0))
    throw std::invalid_argument("geometric_pl scale must lie in (0,1)");
  BatchPolicy p;
  p.kind = BatchKind::geometric_pl;
  p.pl_scale = scale;
  return p;
}

std::uint64_t batch_size(const BatchPolicy& policy, std::uint64_t gamma) {
  switch (policy.kind) {
    case BatchKind::constant:
      return policy.constant_n;
    case BatchKind::geometric: {
      // extended precision so ceilings near integers come out exact
      const long double v = std::pow(static_cast<long double>(policy.base),
                                     -static_cast<long double>(gamma));
      if (!(v < static_cast<long double>(kBatchCap))) throw_cap();
      return static_cast<std::uint64_t>(std::ceil(v));
    }
    case BatchKind::polynomial: {
      std::uint64_t prod = 1;
      for (int t = 1; t <= policy.degree; ++t) {
        const std::uint64_t f = gamma + static_cast<std::uint64_t>(t);
        if (prod > kBatchCap / f) throw_cap();
        prod *= f;
      }
      return prod;
    }
    case BatchKind::power: {
      const long double v =
          std::pow(static_cast<long double>(gamma) + 1.0L,
                   1.0L + static_cast<long double>(policy.delta));
      if (!(v < static_cast<long double>(kBatchCap))) throw_cap();
      return static_cast<std::uint64_t>(std::ceil(v));
    }
    case BatchKind::full:
    case BatchKind::geometric_pl:
      throw std::invalid_argument(
          "batch_size: policy needs problem context (resolved by the solver)");
  }
  throw std::logic_error("unreachable batch kind");
}

BatchPolicy parse_batch_policy(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? spec.substr(colon + 1) : std::string{};

  if (head == "full") {
    if (has_arg)
      throw std::invalid_argument("batch policy 'full' takes no parameter");
    return full_policy();
  }
  if (!has_arg || arg.empty())
    throw std::invalid_argument("batch policy '" + spec +
                                "': missing parameter");
  if (head != "constant" && head != "geometric" && head != "polynomial" &&
      head != "power" && head != "geometric_pl")
    throw std::invalid_argument("unknown batch policy '" + spec + "'");

  const double v = parse_number(spec, arg);
  try {
    if (head == "constant") {
      if (v < 1.0 || v != std::floor(v))
        throw std::invalid_argument("constant batch must be a positive integer");
      return constant_policy(static_cast<std::uint64_t>(v));
    }
    if (head == "geometric") return geometric_policy(v);
    if (head == "polynomial") {
      if (v < 1.0 || v != std::floor(v))
        throw std::invalid_argument(
            "polynomial degree must be a positive integer");
      return polynomial_policy(static_cast<int>(v));
    }
    if (head == "power") return power_policy(v);
    return geometric_pl_policy(v);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("batch policy '" + spec + "': " + e.what());
  }
}

std::string format_batch_policy(const BatchPolicy& policy) {
  auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  switch (policy.kind) {
    case BatchKind::constant:
      return "constant:" + std::to_string(policy.constant_n);
    case BatchKind::geometric:
      return "geometric:" + num(policy.base);
    case BatchKind::polynomial:
      return "polynomial:" + std::to_string(policy.degree);
    case BatchKind::power:
      return "power:" + num(policy.delta);
    case BatchKind::full:
      return "full";
    case BatchKind::geometric_pl:
      return "geometric_pl:" + num(policy.pl_scale);
  }
  throw std::logic_error("unreachable batch kind");
}

}  // namespace bpsg
