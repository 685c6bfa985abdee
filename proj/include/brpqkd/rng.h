#pragma once

#include <cstdint>
#include <random>

namespace brpqkd {

inline constexpr std::uint64_t kPulseBlockSize = 65536;

// Random stream owned by one pulse block. The engine and both samplers are
// part of the reproducibility contract: changing any of them changes every
// Monte Carlo result for a given seed.
class PulseStream {
 public:
  PulseStream(std::uint64_t seed, std::uint64_t block_index);

  // Uniform double in [0, 1) from the top 53 bits of one engine output.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Poisson variate: sequential-search inversion for mu < 10, Hormann's
  // transformed rejection (PTRS) otherwise. mu == 0 consumes no randomness.
  std::int64_t poisson(double mu);

  std::uint64_t raw() { return engine_(); }

 private:
  std::int64_t poisson_inversion(double mu);
  std::int64_t poisson_ptrs(double mu);

  std::mt19937_64 engine_;
};

// Independent stream for one fixed-size pulse block of a seeded run.
PulseStream derive_stream(std::uint64_t seed, std::uint64_t block_index);

}  // namespace brpqkd
