#pragma once

#include <cstdint>

#include "brpqkd/photon_stats.h"

namespace brpqkd {

enum class EveMode { kNone, kPns };

struct EvePolicy {
  EveMode mode = EveMode::kNone;
  double suppress_fraction = 0.0;           // share of single-photon signals blocked
  bool forward_multiphoton_lossless = false; // Eve's ideal channel for n >= 2

  void validate() const;
};

struct McConfig {
  std::uint64_t n_pulses = 1'000'000;
  SourceParams source;
  ChannelParams channel;
  DetectorParams det;
  EvePolicy eve;
  std::uint64_t seed = 1;

  void validate() const;
};

// Raw event counts. Blocks are reduced by integer addition, so the totals are
// independent of how blocks are scheduled.
struct McCounts {
  std::uint64_t pulses = 0;
  std::uint64_t signal_clicks = 0;   // at least one signal photon detected
  std::uint64_t single_clicks = 0;   // signal click from a one-photon emission
  std::uint64_t dark_clicks = 0;
  std::uint64_t error_events = 0;    // misaligned photon clicks + erroneous dark clicks
  std::uint64_t brp_missing = 0;
  std::uint64_t blocked = 0;         // single-photon signals suppressed by Eve
  std::uint64_t blocked_brp_clicked = 0;
  std::uint64_t blocked_undetected = 0;  // blocked and the BRP also failed to click
  std::uint64_t interference_errors = 0;

  McCounts& operator+=(const McCounts& o);
  bool operator==(const McCounts&) const = default;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / trials)
  std::uint64_t trials = 0;

  bool operator==(const Estimate&) const = default;
};

struct McResult {
  McCounts counts;
  Estimate est_y_exp;  // signal clicks per pulse
  Estimate est_y_1;    // single-photon signal clicks per pulse
  Estimate est_d_bob;  // error events per signal click
  Estimate est_g_b0;   // BRP no-click per pulse
  double brp_missing_rate = 0.0;
  Estimate interference_error_rate;  // errors among blocked cycles whose BRP clicked

  bool operator==(const McResult&) const = default;
};

// Pass-through run (no eavesdropper). threads <= 0 uses the OpenMP default.
McResult simulate(const McConfig& config, int threads = 0);

// Run with Eve's PNS + suppression policy applied.
McResult simulate_attack(const McConfig& config, int threads = 0);

// Serial pulse-by-pulse run of the same model; either mode.
McResult simulate_reference(const McConfig& config);

McResult summarize(const McCounts& counts);

// Expected values of the Monte Carlo estimators under the configured policy,
// computed by summing over the emitted photon number. Serves as the target
// when the pass-through formulas no longer apply (Eve active).
struct McExpectation {
  double y_exp = 0.0;
  double y_1 = 0.0;
  double d_bob = 0.0;  // error events per signal click
  double g_b0 = 0.0;
  double interference_error_rate = 0.5;
};

McExpectation expected_rates(const McConfig& config);

// z-score of an estimate against an analytic value, using the analytic
// variance p (1 - p) / trials. 0 when both agree on a degenerate p.
double z_score(const Estimate& estimate, double analytic);

}  // namespace brpqkd
