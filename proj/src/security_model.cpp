#include "brpqkd/security_model.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace brpqkd {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void require_probability(double p, const char* what) {
  if (!is_probability(p)) throw std::domain_error(std::string(what) + ": outside [0, 1]");
}

double dprime_of(double d_eve) { return 0.5 - std::sqrt(d_eve * (1.0 - d_eve)); }

}  // namespace

double binary_entropy(double x) {
  require_probability(x, "binary_entropy");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double mutual_info_ab(double d) {
  require_probability(d, "mutual_info_ab");
  return 1.0 - binary_entropy(d);
}

YieldPair yields(const SourceParams& source, double eta_total) {
  source.validate();
  require_probability(eta_total, "yields: eta_total");
  const double x = eta_total * source.mu_s;
  return {-std::expm1(-x), std::exp(-source.mu_s) * x};
}

double eve_info_multi(const YieldPair& y) {
  if (!(y.y_exp > 0.0)) {
    throw UndefinedPointError("eve_info_multi: no clicks (y_exp = 0)");
  }
  return (y.y_exp - y.y_1) / y.y_exp;
}

ClampedProbability eve_error_rate(double mu_s, double d) {
  if (!std::isfinite(mu_s) || mu_s <= 0.0) throw std::domain_error("eve_error_rate: mu_s <= 0");
  require_probability(d, "eve_error_rate: d");
  // mu_s d / P_1(mu_s) == d e^{mu_s}
  const double raw = d * std::exp(mu_s);
  if (raw > 0.5) return {0.5, true};
  return {raw, false};
}

double eve_info_single(double mu_s, double d) {
  const ClampedProbability d_eve = eve_error_rate(mu_s, d);
  return std::exp(-mu_s) * mutual_info_ab(dprime_of(d_eve.value));
}

ClampedProbability bob_error_rate(const SourceParams& source, const ChannelParams& channel,
                                  const DetectorParams& det) {
  det.validate();
  const YieldPair y = yields(source, channel_transmittance(channel) * det.eta_d);
  if (!(y.y_exp > 0.0)) {
    throw UndefinedPointError("bob_error_rate: no signal clicks (y_exp = 0)");
  }
  const double raw = (det.e_0 * det.y0 + det.e_detector * y.y_exp) / y.y_exp;
  if (raw > 0.5) return {0.5, true};
  return {raw, false};
}

SecurityReport evaluate_point(const SourceParams& source, const ChannelParams& channel,
                              const DetectorParams& det) {
  source.validate();
  channel.validate();
  det.validate();

  SecurityReport r;
  r.yields = yields(source, channel_transmittance(channel) * det.eta_d);

  const ClampedProbability d_bob = bob_error_rate(source, channel, det);
  r.d_bob = d_bob.value;
  r.d_bob_clamped = d_bob.clamped;

  const ClampedProbability d_eve = eve_error_rate(source.mu_s, r.d_bob);
  r.d_eve = d_eve.value;
  r.d_eve_clamped = d_eve.clamped;
  r.d_prime = dprime_of(r.d_eve);

  r.i_ab = mutual_info_ab(r.d_bob);
  r.i_ae_multi = eve_info_multi(r.yields);
  r.i_ae_single = eve_info_single(source.mu_s, r.d_bob);
  r.i_ae = r.i_ae_multi + r.i_ae_single;

  r.r_bob = 0.5 * r.yields.y_exp * r.i_ab;
  r.r_eve = 0.5 * r.yields.y_exp * r.i_ae;
  r.r_s = r.r_bob - r.r_eve;
  r.secure = r.r_s > 0.0;
  return r;
}

SecurityReport evaluate_ideal_point(const ChannelParams& channel, const DetectorParams& det) {
  channel.validate();
  det.validate();
  const double eta_total = channel_transmittance(channel) * det.eta_d;
  if (!(eta_total > 0.0)) {
    throw UndefinedPointError("evaluate_ideal_point: no signal clicks (eta = 0)");
  }

  SecurityReport r;
  r.yields = {eta_total, eta_total};
  const double raw = (det.e_0 * det.y0 + det.e_detector * eta_total) / eta_total;
  r.d_bob = std::min(raw, 0.5);
  r.d_bob_clamped = raw > 0.5;
  r.d_eve = r.d_bob;
  r.d_prime = dprime_of(r.d_eve);

  r.i_ab = mutual_info_ab(r.d_bob);
  r.i_ae_multi = 0.0;
  r.i_ae_single = mutual_info_ab(r.d_prime);
  r.i_ae = r.i_ae_single;

  r.r_bob = 0.5 * eta_total * r.i_ab;
  r.r_eve = 0.5 * eta_total * r.i_ae;
  r.r_s = r.r_bob - r.r_eve;
  r.secure = r.r_s > 0.0;
  return r;
}

}  // namespace brpqkd
