#pragma once

#include <stdexcept>

#include "brpqkd/photon_stats.h"

namespace brpqkd {

// Raised where a quantity is a ratio over a vanishing click probability.
class UndefinedPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct YieldPair {
  double y_exp = 0.0;  // overall click probability per signal pulse
  double y_1 = 0.0;    // part of y_exp contributed by single-photon emissions
};

// A probability that may have been clamped into its physical range.
struct ClampedProbability {
  double value = 0.0;
  bool clamped = false;
};

struct SecurityReport {
  YieldPair yields;
  double d_bob = 0.0;
  double d_eve = 0.0;
  double d_prime = 0.5;
  double i_ab = 0.0;
  double i_ae_multi = 0.0;
  double i_ae_single = 0.0;
  double i_ae = 0.0;
  double r_bob = 0.0;
  double r_eve = 0.0;
  double r_s = 0.0;
  bool secure = false;
  bool d_bob_clamped = false;
  bool d_eve_clamped = false;
};

// Shannon entropy of a binary source in bits, 0 log 0 = 0.
double binary_entropy(double x);

// 1 - H2(d).
double mutual_info_ab(double d);

// Exact yields 1 - e^{-eta mu} and e^{-mu} eta mu (no small-eta shortcuts).
YieldPair yields(const SourceParams& source, double eta_total);

// (y_exp - y_1) / y_exp. Throws UndefinedPointError when y_exp == 0.
double eve_info_multi(const YieldPair& yields);

// d e^{mu_s}, i.e. the whole disturbance attributed to single-photon pulses.
// Clamped at 1/2 beyond which the individual-attack bound stops being real.
ClampedProbability eve_error_rate(double mu_s, double d);

// Upper bound on Eve's information from single-photon pulses, used as the
// value: e^{-mu_s} (1 - H2(1/2 - sqrt(D_eve (1 - D_eve)))).
double eve_info_single(double mu_s, double d);

// (e_0 y0 + e_detector y_exp) / y_exp, clamped to [0, 1/2].
ClampedProbability bob_error_rate(const SourceParams& source, const ChannelParams& channel,
                                  const DetectorParams& det);

SecurityReport evaluate_point(const SourceParams& source, const ChannelParams& channel,
                              const DetectorParams& det);

// Same pipeline for a true single-photon source: every click comes from one
// photon, so Eve has no multi-photon share and D_eve = D.
SecurityReport evaluate_ideal_point(const ChannelParams& channel, const DetectorParams& det);

}  // namespace brpqkd
