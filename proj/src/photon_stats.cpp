#include "brpqkd/photon_stats.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace brpqkd {

namespace {

constexpr double kLogSpaceThreshold = 20.0;

void require(bool ok, const char* field, const std::string& what, double got) {
  if (!ok) {
    std::ostringstream os;
    os << field << ": " << what << " (got " << got << ")";
    throw std::invalid_argument(os.str());
  }
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void SourceParams::validate() const {
  require(std::isfinite(mu_s) && mu_s > 0.0, "mu-s", "must be finite and > 0", mu_s);
  require(std::isfinite(mu_b) && mu_b >= 0.0, "mu-b", "must be finite and >= 0", mu_b);
}

void ChannelParams::validate() const {
  require(std::isfinite(length_km) && length_km >= 0.0, "length-km", "must be finite and >= 0",
          length_km);
  require(std::isfinite(loss_db_per_km) && loss_db_per_km >= 0.0, "loss-db-km",
          "must be finite and >= 0", loss_db_per_km);
}

void DetectorParams::validate() const {
  require(is_probability(eta_d), "eta-d", "must lie in [0, 1]", eta_d);
  require(is_probability(y0), "y0", "must lie in [0, 1]", y0);
  require(is_probability(e_detector), "e-detector", "must lie in [0, 1]", e_detector);
  require(is_probability(e_0), "e-0", "must lie in [0, 1]", e_0);
}

double poisson_pmf(std::int64_t n, double mu) {
  if (n < 0 || !(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("poisson_pmf: requires n >= 0 and finite mu >= 0");
  }
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  const auto nd = static_cast<double>(n);
  if (nd > kLogSpaceThreshold || mu > kLogSpaceThreshold) {
    return std::exp(nd * std::log(mu) - mu - std::lgamma(nd + 1.0));
  }
  double term = std::exp(-mu);
  for (std::int64_t k = 1; k <= n; ++k) term *= mu / static_cast<double>(k);
  return term;
}

double detect_prob(std::int64_t i, double eta) {
  if (i < 0 || !is_probability(eta)) {
    throw std::domain_error("detect_prob: requires i >= 0 and eta in [0, 1]");
  }
  if (i == 0) return 0.0;
  if (i == 1) return eta;
  if (eta == 1.0) return 1.0;
  // -expm1(i log1p(-eta)) keeps precision when eta is tiny.
  return -std::expm1(static_cast<double>(i) * std::log1p(-eta));
}

double channel_transmittance(const ChannelParams& channel) {
  channel.validate();
  return std::pow(10.0, -channel.loss_db_per_km * channel.length_km / 10.0);
}

double brp_empty_prob(double mu_b, double eta_total) {
  if (!std::isfinite(mu_b) || mu_b < 0.0 || !is_probability(eta_total)) {
    throw std::domain_error("brp_empty_prob: requires mu_b >= 0 and eta_total in [0, 1]");
  }
  return std::exp(-eta_total * mu_b);
}

}  // namespace brpqkd
