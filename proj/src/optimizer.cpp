#include "brpqkd/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <sstream>
#include <string>

namespace brpqkd {

namespace {

constexpr double kRefineToleranceKm = 1e-7;
constexpr double kGoldenToleranceMu = 1e-3;
constexpr double kInvPhi = 0.6180339887498949;

// r_s at one distance; a vanishing yield counts as insecure.
double key_rate_margin(double mu_s, const DetectorParams& det, double loss, double length_km) {
  try {
    return evaluate_point(SourceParams{mu_s, 0.0}, ChannelParams{length_km, loss}, det).r_s;
  } catch (const UndefinedPointError&) {
    return 0.0;
  }
}

std::string describe(const std::vector<std::pair<double, double>>& crossings) {
  std::ostringstream os;
  os << "r_s changes sign " << crossings.size() << " times:";
  for (const auto& [lo, hi] : crossings) os << " [" << lo << ", " << hi << "] km";
  return os.str();
}

void require_increasing(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": values must be strictly increasing");
    }
  }
}

template <typename EveInfo>
DisturbanceBound bisect_bound(EveInfo eve_info) {
  auto margin = [&](double d) { return mutual_info_ab(d) - eve_info(d); };
  if (!(margin(0.0) > 0.0)) return {0.0, true};
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return {lo, false};
}

}  // namespace

MultiCrossingError::MultiCrossingError(std::vector<std::pair<double, double>> crossings)
    : std::runtime_error(describe(crossings)), crossings_(std::move(crossings)) {}

SecureDistance secure_distance(double mu_s, const DetectorParams& det, double loss_db_per_km,
                               double tolerance_km) {
  SourceParams{mu_s, 0.0}.validate();
  ChannelParams{0.0, loss_db_per_km}.validate();
  det.validate();
  if (!(tolerance_km > 0.0)) throw std::invalid_argument("secure_distance: tolerance must be > 0");

  const auto steps = static_cast<int>(kScanCapKm);
  std::vector<bool> secure(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    secure[i] = key_rate_margin(mu_s, det, loss_db_per_km, i) > 0.0;
  }
  if (!secure[0]) return {0.0, false, true};

  std::vector<std::pair<double, double>> crossings;
  for (int i = 0; i < steps; ++i) {
    if (secure[i] != secure[i + 1]) crossings.emplace_back(i, i + 1);
  }
  if (crossings.empty()) return {kScanCapKm, true, false};
  if (crossings.size() > 1) throw MultiCrossingError(std::move(crossings));

  double lo = crossings.front().first;
  double hi = crossings.front().second;
  while (hi - lo > tolerance_km) {
    const double mid = 0.5 * (lo + hi);
    (key_rate_margin(mu_s, det, loss_db_per_km, mid) > 0.0 ? lo : hi) = mid;
  }
  return {lo, false, false};
}

OptimalIntensity optimal_signal_intensity(const DetectorParams& det, double loss_db_per_km,
                                          const std::vector<double>& mu_s_grid) {
  require_increasing(mu_s_grid, "optimal_signal_intensity: mu_s grid");
  auto distance_at = [&](double mu) {
    return secure_distance(mu, det, loss_db_per_km, kRefineToleranceKm);
  };

  std::vector<SecureDistance> on_grid;
  on_grid.reserve(mu_s_grid.size());
  for (double mu : mu_s_grid) on_grid.push_back(distance_at(mu));
  if (mu_s_grid.size() == 1) return {mu_s_grid.front(), on_grid.front(), false};

  std::size_t best = 0;
  for (std::size_t i = 1; i < on_grid.size(); ++i) {
    if (on_grid[i].km > on_grid[best].km) best = i;
  }

  // Contiguous run of grid points indistinguishable from the maximum.
  std::size_t first = best;
  std::size_t last = best;
  const double top = on_grid[best].km;
  while (first > 0 && top - on_grid[first - 1].km <= kDistanceToleranceKm) --first;
  while (last + 1 < on_grid.size() && top - on_grid[last + 1].km <= kDistanceToleranceKm) ++last;
  if (last > first) {
    const double mid = 0.5 * (mu_s_grid[first] + mu_s_grid[last]);
    return {mid, distance_at(mid), true};
  }

  double a = mu_s_grid[best == 0 ? 0 : best - 1];
  double b = mu_s_grid[std::min(best + 1, mu_s_grid.size() - 1)];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = distance_at(c).km;
  double fd = distance_at(d).km;
  while (b - a > kGoldenToleranceMu) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = distance_at(c).km;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = distance_at(d).km;
    }
  }
  const double refined = 0.5 * (a + b);
  const SecureDistance at_refined = distance_at(refined);
  if (at_refined.km < on_grid[best].km) return {mu_s_grid[best], on_grid[best], false};
  return {refined, at_refined, false};
}

BrpBound brp_intensity_bound(double mu_s, const ChannelParams& channel, const DetectorParams& det,
                             double budget) {
  SourceParams{mu_s, 0.0}.validate();
  det.validate();
  if (!std::isfinite(budget) || budget < 0.0) {
    throw std::invalid_argument("brp_intensity_bound: budget must be >= 0");
  }
  const double eta_total = channel_transmittance(channel) * det.eta_d;
  if (!(eta_total > 0.0)) {
    throw std::domain_error("brp_intensity_bound: overall efficiency is zero");
  }
  const double target = budget * poisson_pmf(1, mu_s);
  if (target >= 1.0) return {0.0, 1.0, budget};
  if (target <= 0.0) {
    return {std::numeric_limits<double>::infinity(), 0.0, budget};
  }
  const double mu_b_min = -std::log(target) / eta_total;
  return {mu_b_min, brp_empty_prob(mu_b_min, eta_total), budget};
}

double eve_info_small_eta(double mu_s, double d) {
  return -std::expm1(-mu_s) + eve_info_single(mu_s, d);
}

double eve_info_ideal(double d) {
  return mutual_info_ab(0.5 - std::sqrt(d * (1.0 - d)));
}

DisturbanceBound disturbance_bound(double mu_s) {
  SourceParams{mu_s, 0.0}.validate();
  return bisect_bound([mu_s](double d) { return eve_info_small_eta(mu_s, d); });
}

DisturbanceBound disturbance_bound(IdealSource) {
  return bisect_bound([](double d) { return eve_info_ideal(d); });
}

void SweepGrid::validate() const {
  require_increasing(mu_s_values, "sweep: mu_s values");
  require_increasing(length_values_km, "sweep: distances");
  for (double mu : mu_s_values) SourceParams{mu, mu_b}.validate();
  for (double L : length_values_km) ChannelParams{L, loss_db_per_km}.validate();
  det.validate();
}

std::vector<SweepRow> sweep_reference(const SweepGrid& grid) {
  grid.validate();
  std::vector<SweepRow> rows;
  rows.reserve(grid.mu_s_values.size() * grid.length_values_km.size());
  for (double mu : grid.mu_s_values) {
    for (double L : grid.length_values_km) {
      rows.push_back({mu, L,
                      evaluate_point(SourceParams{mu, grid.mu_b},
                                     ChannelParams{L, grid.loss_db_per_km}, grid.det)});
    }
  }
  return rows;
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  grid.validate();
  const auto n_len = static_cast<std::ptrdiff_t>(grid.length_values_km.size());
  const auto total = static_cast<std::ptrdiff_t>(grid.mu_s_values.size()) * n_len;
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const double mu = grid.mu_s_values[static_cast<std::size_t>(k / n_len)];
    const double L = grid.length_values_km[static_cast<std::size_t>(k % n_len)];
    try {
      rows[static_cast<std::size_t>(k)] = {
          mu, L,
          evaluate_point(SourceParams{mu, grid.mu_b}, ChannelParams{L, grid.loss_db_per_km},
                         grid.det)};
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace brpqkd
