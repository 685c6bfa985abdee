#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "brpqkd/photon_stats.h"
#include "brpqkd/security_model.h"

namespace brpqkd {

inline constexpr double kScanCapKm = 1000.0;
inline constexpr double kDistanceToleranceKm = 0.01;
inline constexpr double kDefaultSuppressionBudget = 1.0e-3;

// Raised when r_s changes sign more than once along the distance scan.
class MultiCrossingError : public std::runtime_error {
 public:
  // Each crossing is the 1 km scan interval [lo, hi] bracketing a sign change.
  MultiCrossingError(std::vector<std::pair<double, double>> crossings);

  const std::vector<std::pair<double, double>>& crossings() const { return crossings_; }

 private:
  std::vector<std::pair<double, double>> crossings_;
};

struct SecureDistance {
  double km = 0.0;
  bool unbounded = false;           // secure up to the scan cap
  bool insecure_everywhere = false; // r_s <= 0 already at L = 0
};

// Largest L with r_s(L) > 0: 1 km scan up to kScanCapKm, then bisection.
SecureDistance secure_distance(double mu_s, const DetectorParams& det, double loss_db_per_km,
                               double tolerance_km = kDistanceToleranceKm);

struct OptimalIntensity {
  double mu_s_star = 0.0;
  SecureDistance distance;
  bool plateau = false;  // objective flat around the argmax; midpoint returned
};

OptimalIntensity optimal_signal_intensity(const DetectorParams& det, double loss_db_per_km,
                                          const std::vector<double>& mu_s_grid);

struct BrpBound {
  double mu_b_min = 0.0;
  double g_b0_at_bound = 1.0;
  double suppression_budget = kDefaultSuppressionBudget;
};

// Smallest BRP intensity keeping G_B(0) <= budget * P_1(mu_s).
BrpBound brp_intensity_bound(double mu_s, const ChannelParams& channel, const DetectorParams& det,
                             double budget = kDefaultSuppressionBudget);

// Tag selecting the ideal single-photon source in disturbance_bound.
struct IdealSource {};

struct DisturbanceBound {
  double d = 0.0;
  bool insecure_at_zero = false;
};

// Largest Bob error rate D at which 1 - H2(D) still exceeds Eve's information,
// with the single/multi click ratio taken in the small-eta limit (e^{-mu_s}).
DisturbanceBound disturbance_bound(double mu_s);
DisturbanceBound disturbance_bound(IdealSource);

// Eve's information at disturbance d in the small-eta limit.
double eve_info_small_eta(double mu_s, double d);
double eve_info_ideal(double d);

struct SweepGrid {
  std::vector<double> mu_s_values;
  std::vector<double> length_values_km;
  DetectorParams det;
  double loss_db_per_km = 0.21;
  double mu_b = 0.0;

  void validate() const;
};

struct SweepRow {
  double mu_s = 0.0;
  double length_km = 0.0;
  SecurityReport report;
};

// Rows ordered by (mu_s, L). OpenMP-parallel over rows; output identical to
// sweep_reference.
std::vector<SweepRow> sweep(const SweepGrid& grid);

// Serial evaluation of the same grid.
std::vector<SweepRow> sweep_reference(const SweepGrid& grid);

}  // namespace brpqkd
