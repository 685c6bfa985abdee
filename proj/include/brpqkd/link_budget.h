#pragma once

#include "brpqkd/photon_stats.h"

namespace brpqkd {

// Intensity bookkeeping for the two unbalanced Mach-Zehnder interferometers.
// Split ratios give the power fraction sent into the long (unattenuated) arm;
// the short arm carries the remainder through its attenuator.
struct OpticalChain {
  double source_intensity = 8.0e5;  // photons per pulse into Alice's MZ
  double alice_long_fraction = 0.5;
  double bob_long_fraction = 0.5;
  double alice_attenuation_db = 56.0;
  double bob_attenuation_db = 56.0;
  ChannelParams channel{146.0, 0.21};
  double switch_crosstalk_db = 20.0;

  void validate() const;
};

struct LinkBudgetReport {
  double brp_at_alice = 0.0;
  double signal_at_alice = 0.0;
  double brp_at_bob = 0.0;
  double signal_at_bob = 0.0;
  double dim_at_bob = 0.0;
  double switch_leak_at_signal_detector = 0.0;
};

// Mean photons per pulse class. BRP: long arm at both sites. Signal: one
// long and one short arm. Dim: both short arms.
LinkBudgetReport propagate(const OpticalChain& chain);

// Error rate from after-pulses: an after-pulse click carries a random bit.
double afterpulse_error(double p_afterpulse);

// Probability that leaked BRP light fires the signal detector.
double crosstalk_false_click(double leak_intensity, double eta_d);

// 10^{-db/10}
double db_to_fraction(double db);

}  // namespace brpqkd
