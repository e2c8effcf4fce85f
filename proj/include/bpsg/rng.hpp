#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bpsg {

// splitmix64 finalizer; used to derive decorrelated seeds (e.g. the data
// stream from the base experiment seed).
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random stream. The engine (mt19937_64) is bit-exact by the
// standard; the variate transforms are written out here because the
// std::*_distribution classes are implementation-defined and would break the
// byte-identical-output guarantee across library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform on (0,1]; safe under log()
  double uniform_pos() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  // standard normal via Box-Muller (two uniforms per variate)
  double normal() {
    const double u = uniform_pos();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(6.28318530717958647692 * v);
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  // uniform over {0,...,n-1}, rejection sampling (no modulo bias)
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    std::uint64_t r;
    do {
      r = gen_();
    } while (rem != 0 && r >= max - rem + 1);
    return r % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bpsg
