#include "brpqkd/link_budget.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace brpqkd {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

bool is_fraction(double f) { return std::isfinite(f) && f >= 0.0 && f <= 1.0; }

}  // namespace

void OpticalChain::validate() const {
  require(std::isfinite(source_intensity) && source_intensity >= 0.0, "source-intensity",
          "must be finite and >= 0");
  require(is_fraction(alice_long_fraction), "alice-split", "long-arm fraction must lie in [0, 1]");
  require(is_fraction(bob_long_fraction), "bob-split", "long-arm fraction must lie in [0, 1]");
  require(std::isfinite(alice_attenuation_db) && alice_attenuation_db >= 0.0, "alice-atten-db",
          "must be finite and >= 0");
  require(std::isfinite(bob_attenuation_db) && bob_attenuation_db >= 0.0, "bob-atten-db",
          "must be finite and >= 0");
  require(std::isfinite(switch_crosstalk_db) && switch_crosstalk_db >= 0.0, "crosstalk-db",
          "must be finite and >= 0");
  channel.validate();
}

double db_to_fraction(double db) { return std::pow(10.0, -db / 10.0); }

LinkBudgetReport propagate(const OpticalChain& chain) {
  chain.validate();
  const double alice_short = (1.0 - chain.alice_long_fraction) *
                             db_to_fraction(chain.alice_attenuation_db);
  const double bob_short = (1.0 - chain.bob_long_fraction) *
                           db_to_fraction(chain.bob_attenuation_db);
  const double eta_t = channel_transmittance(chain.channel);

  LinkBudgetReport r;
  r.brp_at_alice = chain.source_intensity * chain.alice_long_fraction * chain.bob_long_fraction;
  r.signal_at_alice = chain.source_intensity * chain.alice_long_fraction * bob_short;
  r.brp_at_bob = r.brp_at_alice * eta_t;
  r.signal_at_bob = r.signal_at_alice * eta_t;
  r.dim_at_bob = chain.source_intensity * alice_short * bob_short * eta_t;
  r.switch_leak_at_signal_detector = r.brp_at_bob * db_to_fraction(chain.switch_crosstalk_db);
  return r;
}

double afterpulse_error(double p_afterpulse) {
  if (!is_fraction(p_afterpulse)) {
    throw std::domain_error("afterpulse_error: probability outside [0, 1]");
  }
  return 0.5 * p_afterpulse;
}

double crosstalk_false_click(double leak_intensity, double eta_d) {
  if (!std::isfinite(leak_intensity) || leak_intensity < 0.0 || !is_fraction(eta_d)) {
    throw std::domain_error("crosstalk_false_click: requires leak >= 0 and eta_d in [0, 1]");
  }
  return -std::expm1(-eta_d * leak_intensity);
}

}  // namespace brpqkd
