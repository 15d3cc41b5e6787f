#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace wdrjcc {

/// xoshiro256** seeded through splitmix64. Streams depend only on the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_;
};

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double z);

}  // namespace wdrjcc
