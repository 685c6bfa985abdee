#pragma once

#include <cstdint>

namespace brpqkd {

// Mean photon numbers of the weak signal pulse and the bright reference pulse.
struct SourceParams {
  double mu_s = 0.5;
  double mu_b = 2.0e5;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ChannelParams {
  double length_km = 0.0;
  double loss_db_per_km = 0.21;

  void validate() const;
};

struct DetectorParams {
  double eta_d = 0.045;       // detection efficiency, decoder losses included
  double y0 = 1.7e-6;         // dark/background click probability per gate
  double e_detector = 0.033;  // probability a photon lands in the wrong detector
  double e_0 = 0.5;           // error weight of a dark click

  void validate() const;
};

// e^{-mu} mu^n / n!. Log-space evaluation above n = 20 or mu = 20.
double poisson_pmf(std::int64_t n, double mu);

// Probability that at least one of i photons clicks when each survives with
// probability eta: 1 - (1 - eta)^i.
double detect_prob(std::int64_t i, double eta);

// 10^{-alpha L / 10}.
double channel_transmittance(const ChannelParams& channel);

// Probability that a BRP of mean mu_b produces no click at overall
// efficiency eta_total, i.e. the closed form of sum_i P_i(mu_b)(1-eta)^i.
double brp_empty_prob(double mu_b, double eta_total);

}  // namespace brpqkd
