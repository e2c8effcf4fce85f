#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bpsg {

// Per-block selection counters. gamma[i] counts how many times block i has
// been chosen; k is the total iteration count (diagnostic; always equals the
// sum of gamma).
struct BlockClocks {
  std::vector<std::uint64_t> gamma;
  std::uint64_t k = 0;
};

BlockClocks make_clocks(int n);
void record_selection(BlockClocks& clocks, int i);

enum class BatchKind {
  constant,      // N
  geometric,     // ceil(base^-gamma), base in (0,1)
  polynomial,    // prod_{t=1..v} (gamma + t)
  power,         // ceil((gamma+1)^(1+delta))
  full,          // exact gradient; counts the dataset size in oracle calls
  geometric_pl,  // per-block geometric with q_i = scale*(2-sqrt(3))^2*mu/L_i
};

struct BatchPolicy {
  BatchKind kind = BatchKind::constant;
  std::uint64_t constant_n = 1;
  double base = 0.0;      // geometric
  int degree = 0;         // polynomial
  double delta = 0.0;     // power
  double pl_scale = 0.0;  // geometric_pl

  friend bool operator==(const BatchPolicy&, const BatchPolicy&) = default;
};

BatchPolicy constant_policy(std::uint64_t n);
BatchPolicy geometric_policy(double base);
BatchPolicy polynomial_policy(int degree);
BatchPolicy power_policy(double delta);
BatchPolicy full_policy();
BatchPolicy geometric_pl_policy(double scale);

// Batch size at clock value gamma. Sizes are capped at 2^62; a policy that
// crosses the cap throws a budget-exceeded error. The full and geometric_pl
// kinds need problem context and are resolved by the solver, not here.
std::uint64_t batch_size(const BatchPolicy& policy, std::uint64_t gamma);

// "constant:N" | "geometric:b" | "polynomial:v" | "power:delta" | "full" |
// "geometric_pl:c". Parse errors mention the offending spec.
BatchPolicy parse_batch_policy(const std::string& spec);
std::string format_batch_policy(const BatchPolicy& policy);

}  // namespace bpsg
