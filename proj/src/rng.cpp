#include "brpqkd/rng.h"

#include <cmath>
#include <stdexcept>

namespace brpqkd {

namespace {

constexpr double kInversionLimit = 10.0;

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t block_index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(seed), hi(seed), lo(block_index), hi(block_index), 0x42525051u};
}

}  // namespace

PulseStream::PulseStream(std::uint64_t seed, std::uint64_t block_index) {
  auto seq = make_seed_seq(seed, block_index);
  engine_.seed(seq);
}

std::int64_t PulseStream::poisson(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::domain_error("poisson: mu must be >= 0");
  if (mu == 0.0) return 0;
  return mu < kInversionLimit ? poisson_inversion(mu) : poisson_ptrs(mu);
}

std::int64_t PulseStream::poisson_inversion(double mu) {
  const double u = uniform();
  double p = std::exp(-mu);
  double cdf = p;
  std::int64_t k = 0;
  // The cap only matters when rounding leaves cdf a hair below u.
  while (u >= cdf && k < 1000) {
    ++k;
    p *= mu / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::int64_t PulseStream::poisson_ptrs(double mu) {
  const double slam = std::sqrt(mu);
  const double loglam = std::log(mu);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mu + 0.43));
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    const auto kd = static_cast<double>(k);
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mu + kd * loglam - std::lgamma(kd + 1.0)) {
      return k;
    }
  }
}

PulseStream derive_stream(std::uint64_t seed, std::uint64_t block_index) {
  return PulseStream(seed, block_index);
}

}  // namespace brpqkd
