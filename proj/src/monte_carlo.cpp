#include "brpqkd/monte_carlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "brpqkd/rng.h"

namespace brpqkd {

namespace {

// Per-run constants shared by every pulse.
struct PulseModel {
  double mu_s;
  double eta_total;     // eta_t * eta_d
  double eta_d;
  double brp_mean;      // surviving BRP photons, eta_total * mu_b
  double y0;
  double e_detector;
  double e_0;
  bool attack;
  double suppress;
  bool lossless;
};

PulseModel make_model(const McConfig& c) {
  const double eta_t = channel_transmittance(c.channel);
  const double eta_total = eta_t * c.det.eta_d;
  return {c.source.mu_s,
          eta_total,
          c.det.eta_d,
          eta_total * c.source.mu_b,
          c.det.y0,
          c.det.e_detector,
          c.det.e_0,
          c.eve.mode == EveMode::kPns,
          c.eve.suppress_fraction,
          c.eve.forward_multiphoton_lossless};
}

// Draw order per pulse is fixed: emitted photons, Eve's block decision,
// per-photon survival, dark click, error coins, BRP photons, interference coin.
void simulate_pulse(const PulseModel& m, PulseStream& rng, McCounts& c) {
  ++c.pulses;
  const std::int64_t emitted = rng.poisson(m.mu_s);

  bool blocked = false;
  std::int64_t reaching = emitted;
  double efficiency = m.eta_total;
  if (m.attack) {
    if (emitted == 1 && m.suppress > 0.0) {
      blocked = rng.bernoulli(m.suppress);
    } else if (emitted >= 2 && m.lossless) {
      // Eve keeps one photon and forwards the rest without fiber loss.
      reaching = emitted - 1;
      efficiency = m.eta_d;
    }
  }

  bool photon_click = false;
  if (!blocked) {
    for (std::int64_t j = 0; j < reaching; ++j) {
      if (rng.bernoulli(efficiency)) {
        photon_click = true;
        break;
      }
    }
  }
  const bool dark = rng.bernoulli(m.y0);

  if (photon_click) {
    ++c.signal_clicks;
    if (emitted == 1) ++c.single_clicks;
    if (rng.bernoulli(m.e_detector)) ++c.error_events;
  }
  if (dark) {
    ++c.dark_clicks;
    if (rng.bernoulli(m.e_0)) ++c.error_events;
  }

  const bool brp_click = rng.poisson(m.brp_mean) >= 1;
  if (!brp_click) ++c.brp_missing;

  if (blocked) {
    ++c.blocked;
    if (brp_click) {
      // The lone BRP interferes in Bob's MZ and lands in either port.
      ++c.blocked_brp_clicked;
      ++c.signal_clicks;
      if (rng.bernoulli(0.5)) {
        ++c.interference_errors;
        ++c.error_events;
      }
    } else {
      ++c.blocked_undetected;
    }
  }
}

McCounts run_block(const PulseModel& m, std::uint64_t seed, std::uint64_t block,
                   std::uint64_t pulses) {
  PulseStream rng = derive_stream(seed, block);
  McCounts c;
  for (std::uint64_t i = 0; i < pulses; ++i) simulate_pulse(m, rng, c);
  return c;
}

McResult run_blocks(const McConfig& config, int threads) {
  config.validate();
  const PulseModel model = make_model(config);
  const std::uint64_t n_blocks = (config.n_pulses + kPulseBlockSize - 1) / kPulseBlockSize;
  std::vector<McCounts> per_block(n_blocks);

#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
    const auto block = static_cast<std::uint64_t>(b);
    const std::uint64_t begin = block * kPulseBlockSize;
    const std::uint64_t count = std::min(kPulseBlockSize, config.n_pulses - begin);
    per_block[block] = run_block(model, config.seed, block, count);
  }
  (void)threads;

  McCounts total;
  for (const McCounts& c : per_block) total += c;
  return summarize(total);
}

Estimate proportion(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 0.0, 0};
  const double p = std::min(1.0, static_cast<double>(successes) / static_cast<double>(trials));
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

}  // namespace

void EvePolicy::validate() const {
  if (!(suppress_fraction >= 0.0 && suppress_fraction <= 1.0)) {
    throw std::invalid_argument("suppress-fraction: must lie in [0, 1]");
  }
}

void McConfig::validate() const {
  if (n_pulses == 0) throw std::invalid_argument("n-pulses: must be >= 1");
  // mu_s = 0 is a valid "nothing to detect" run here, unlike the analytic model.
  if (!(std::isfinite(source.mu_s) && source.mu_s >= 0.0)) {
    throw std::invalid_argument("mu-s: must be finite and >= 0");
  }
  if (!(std::isfinite(source.mu_b) && source.mu_b >= 0.0)) {
    throw std::invalid_argument("mu-b: must be finite and >= 0");
  }
  channel.validate();
  det.validate();
  eve.validate();
}

McCounts& McCounts::operator+=(const McCounts& o) {
  pulses += o.pulses;
  signal_clicks += o.signal_clicks;
  single_clicks += o.single_clicks;
  dark_clicks += o.dark_clicks;
  error_events += o.error_events;
  brp_missing += o.brp_missing;
  blocked += o.blocked;
  blocked_brp_clicked += o.blocked_brp_clicked;
  blocked_undetected += o.blocked_undetected;
  interference_errors += o.interference_errors;
  return *this;
}

McResult summarize(const McCounts& c) {
  McResult r;
  r.counts = c;
  r.est_y_exp = proportion(c.signal_clicks, c.pulses);
  r.est_y_1 = proportion(c.single_clicks, c.pulses);
  r.est_d_bob = proportion(c.error_events, c.signal_clicks);
  r.est_g_b0 = proportion(c.brp_missing, c.pulses);
  r.brp_missing_rate = r.est_g_b0.value;
  r.interference_error_rate = proportion(c.interference_errors, c.blocked_brp_clicked);
  return r;
}

McResult simulate(const McConfig& config, int threads) {
  if (config.eve.mode != EveMode::kNone) {
    throw std::invalid_argument("simulate: eve-mode must be none; use simulate_attack");
  }
  return run_blocks(config, threads);
}

McResult simulate_attack(const McConfig& config, int threads) {
  if (config.eve.mode != EveMode::kPns) {
    throw std::invalid_argument("simulate_attack: eve-mode must be pns");
  }
  return run_blocks(config, threads);
}

McResult simulate_reference(const McConfig& config) {
  config.validate();
  const PulseModel model = make_model(config);
  McCounts total;
  PulseStream rng = derive_stream(config.seed, 0);
  for (std::uint64_t i = 0; i < config.n_pulses; ++i) {
    if (i % kPulseBlockSize == 0) rng = derive_stream(config.seed, i / kPulseBlockSize);
    simulate_pulse(model, rng, total);
  }
  return summarize(total);
}

McExpectation expected_rates(const McConfig& config) {
  config.validate();
  const PulseModel m = make_model(config);
  const auto n_max = static_cast<std::int64_t>(std::ceil(m.mu_s + 12.0 * std::sqrt(m.mu_s + 1.0))) + 10;

  double photon = 0.0;
  double single = 0.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    double click = 0.0;
    if (n == 1) {
      click = m.eta_total * (m.attack ? 1.0 - m.suppress : 1.0);
    } else if (m.attack && m.lossless) {
      click = detect_prob(n - 1, m.eta_d);
    } else {
      click = detect_prob(n, m.eta_total);
    }
    const double term = poisson_pmf(n, m.mu_s) * click;
    photon += term;
    if (n == 1) single = term;
  }

  McExpectation e;
  e.g_b0 = std::exp(-m.brp_mean);
  const double interference =
      m.attack ? poisson_pmf(1, m.mu_s) * m.suppress * (1.0 - e.g_b0) : 0.0;
  e.y_exp = photon + interference;
  e.y_1 = single;
  if (e.y_exp > 0.0) {
    e.d_bob = std::min(
        1.0, (m.e_0 * m.y0 + m.e_detector * photon + 0.5 * interference) / e.y_exp);
  }
  return e;
}

double z_score(const Estimate& estimate, double analytic) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (estimate.trials == 0) return kInf;
  const double var = analytic * (1.0 - analytic) / static_cast<double>(estimate.trials);
  if (!(var > 0.0)) return estimate.value == analytic ? 0.0 : kInf;
  return (estimate.value - analytic) / std::sqrt(var);
}

}  // namespace brpqkd
