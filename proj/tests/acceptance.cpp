// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "brpqkd/cli.h"
#include "brpqkd/link_budget.h"
#include "brpqkd/monte_carlo.h"
#include "brpqkd/optimizer.h"
#include "brpqkd/security_model.h"

using namespace brpqkd;

namespace {

const DetectorParams kGys{0.045, 1.7e-6, 0.033, 0.5};
constexpr double kLoss = 0.21;

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_rel(double x, double target, double rel) { return std::fabs(x - target) <= rel * std::fabs(target); }

Verdict secure_distance_check() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const SecureDistance d = secure_distance(0.5, kGys, kLoss);
  const double dt = seconds_since(t0);
  v.check(std::fabs(d.km - 146.0) <= 3.0, fmt::format("distance {:.4f} km", d.km));
  v.check(dt < 1.0, fmt::format("runtime {:.3f} s", dt));
  v.detail = v.pass ? fmt::format("L = {:.4f} km in {:.3f} s", d.km, dt) : v.detail;
  return v;
}

Verdict optimal_intensity_check() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> grid;
  for (int i = 0; i <= 18; ++i) grid.push_back(0.1 + 0.05 * i);
  const OptimalIntensity best = optimal_signal_intensity(kGys, kLoss, grid);
  const double dt = seconds_since(t0);
  const double at_01 = secure_distance(0.1, kGys, kLoss).km;
  const double at_10 = secure_distance(1.0, kGys, kLoss).km;
  v.check(std::fabs(best.mu_s_star - 0.5) <= 0.05, fmt::format("mu_s* {:.4f}", best.mu_s_star));
  v.check(best.distance.km > at_01 && best.distance.km > at_10,
          fmt::format("distances {:.3f} vs {:.3f}/{:.3f}", best.distance.km, at_01, at_10));
  v.check(dt < 10.0, fmt::format("runtime {:.3f} s", dt));
  v.detail = v.pass ? fmt::format("mu_s* = {:.4f}, L = {:.3f} km (0.1: {:.3f}, 1.0: {:.3f}) in {:.3f} s",
                                  best.mu_s_star, best.distance.km, at_01, at_10, dt)
                    : v.detail;
  return v;
}

Verdict brp_bound_check() {
  Verdict v;
  const ChannelParams channel{146.0, kLoss};
  const BrpBound b = brp_intensity_bound(0.5, channel, kGys);
  v.check(b.mu_b_min >= 1.9e5 && b.mu_b_min <= 2.2e5, fmt::format("mu_b_min {:.6g}", b.mu_b_min));
  v.check(within_rel(2.0e5, b.mu_b_min, 0.10), "2e5 not within 10%");
  const double eta_total = channel_transmittance(channel) * kGys.eta_d;
  const double target = kDefaultSuppressionBudget * poisson_pmf(1, 0.5);
  const double round_trip = brp_empty_prob(b.mu_b_min, eta_total);
  v.check(within_rel(round_trip, target, 1e-9), fmt::format("round trip {:.12e} vs {:.12e}", round_trip, target));
  v.detail = v.pass ? fmt::format("mu_b_min = {:.6g}, G_B(0) = {:.6e}", b.mu_b_min, round_trip) : v.detail;
  return v;
}

Verdict disturbance_bound_check() {
  Verdict v;
  const double ideal = disturbance_bound(IdealSource{}).d;
  v.check(std::fabs(ideal - 0.14645) <= 1e-3, fmt::format("ideal {:.6f}", ideal));
  std::string chain;
  double prev = ideal;
  for (double mu : {0.1, 0.3, 0.5, 0.8, 1.0}) {
    const double d = disturbance_bound(mu).d;
    v.check(d < prev, fmt::format("not decreasing at mu_s {}", mu));
    chain += fmt::format(" {:.5f}", d);
    prev = d;
  }
  v.detail = v.pass ? fmt::format("ideal = {:.6f}, bounds:{}", ideal, chain) : v.detail;
  return v;
}

Verdict link_budget_check() {
  Verdict v;
  const double eta = channel_transmittance({146.0, 0.21});
  v.check(within_rel(eta, 8.59e-4, 0.005), fmt::format("eta_t {:.6e}", eta));
  const LinkBudgetReport r = propagate(OpticalChain{});
  v.check(r.brp_at_alice == 2.0e5, fmt::format("brp_at_alice {:.9g}", r.brp_at_alice));
  v.check(within_rel(r.signal_at_alice, 0.50, 0.01), fmt::format("signal_at_alice {:.6g}", r.signal_at_alice));
  v.check(within_rel(r.brp_at_bob, 172.0, 0.01), fmt::format("brp_at_bob {:.6g}", r.brp_at_bob));
  v.check(within_rel(r.signal_at_bob, 4.3e-4, 0.01), fmt::format("signal_at_bob {:.6g}", r.signal_at_bob));
  v.check(afterpulse_error(0.008) == 0.004, "afterpulse_error(0.008) != 0.004");
  v.detail = v.pass ? fmt::format("eta_t = {:.6e}, brp@bob = {:.4f}, signal@alice = {:.4f}, signal@bob = {:.4e}", eta,
                                  r.brp_at_bob, r.signal_at_alice, r.signal_at_bob)
                    : v.detail;
  return v;
}

Verdict monte_carlo_check() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 pick(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0;
  double worst = 0.0;
  for (int point = 0; point < 20; ++point) {
    McConfig c;
    c.n_pulses = 1'000'000;
    c.det = kGys;
    c.source.mu_s = 0.1 + 0.9 * u(pick);
    c.channel = {150.0 * u(pick), kLoss};
    const double eta_total = channel_transmittance(c.channel) * c.det.eta_d;
    const double g_target = 0.05 + 0.90 * u(pick);
    c.source.mu_b = -std::log(g_target) / eta_total;
    c.seed = 1000 + static_cast<std::uint64_t>(point);

    const McResult r = simulate(c);
    const YieldPair y = yields(c.source, eta_total);
    const double d_bob = std::min(1.0, (c.det.e_0 * c.det.y0 + c.det.e_detector * y.y_exp) / y.y_exp);
    for (double z : {z_score(r.est_y_exp, y.y_exp), z_score(r.est_d_bob, d_bob),
                     z_score(r.est_g_b0, brp_empty_prob(c.source.mu_b, eta_total))}) {
      worst = std::max(worst, std::fabs(z));
      if (std::fabs(z) > kMaxAbsZ) ++failures;
    }
  }
  v.check(failures <= 1, fmt::format("{} of 60 comparisons beyond 4 SE", failures));

  McConfig attack;
  attack.n_pulses = 1'000'000;
  attack.det = kGys;
  attack.source = {0.5, 1.0e9};
  attack.channel = {20.0, kLoss};
  attack.eve.mode = EveMode::kPns;
  attack.eve.suppress_fraction = 1.0;
  attack.seed = 77;
  const Estimate ie = simulate_attack(attack).interference_error_rate;
  const double ie_z = z_score(ie, 0.5);
  v.check(ie.trials > 0 && std::fabs(ie_z) <= kMaxAbsZ,
          fmt::format("interference rate {:.5f} (z {:.2f}, trials {})", ie.value, ie_z, ie.trials));

  const double dt = seconds_since(t0);
  v.check(dt < 60.0, fmt::format("runtime {:.2f} s", dt));
  v.detail = v.pass ? fmt::format("{} of 60 beyond 4 SE (max |z| {:.2f}), interference rate {:.5f} (z {:.2f}), {:.2f} s",
                                  failures, worst, ie.value, ie_z, dt)
                    : v.detail;
  return v;
}

std::string run_to_file(std::vector<std::string> args, const std::filesystem::path& out) {
  args.insert(args.begin(), "brpqkd");
  args.push_back("--out");
  args.push_back(out.string());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  std::ostringstream err;
  run_cli(static_cast<int>(argv.size()), argv.data(), sink, err);
  std::ifstream in(out, std::ios::binary);
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

Verdict determinism_check() {
  Verdict v;
  McConfig c;
  c.n_pulses = 1'000'123;
  c.det = kGys;
  c.source = {0.5, 3.0e5};
  c.channel = {60.0, kLoss};
  c.seed = 99;
  v.check(simulate(c, 1) == simulate(c, 8), "pass-through run differs between 1 and 8 threads");
  c.eve.mode = EveMode::kPns;
  c.eve.suppress_fraction = 0.4;
  c.eve.forward_multiphoton_lossless = true;
  v.check(simulate_attack(c, 1) == simulate_attack(c, 8), "attack run differs between 1 and 8 threads");

  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "brpqkd_acceptance_a.out";
  const auto b = dir / "brpqkd_acceptance_b.out";
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"mc-validate", "--n-pulses", "200000", "--seed", "5"},
           {"sweep", "--axis", "distance"},
           {"sweep", "--axis", "disturbance", "--format", "json"},
           {"optimize"},
           {"evaluate"},
           {"budget"}}) {
    const std::string first = run_to_file(args, a);
    const std::string second = run_to_file(args, b);
    v.check(!first.empty() && first == second, "CLI output differs for " + args.front());
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  v.detail = v.pass ? "McResult equal at 1 and 8 threads; CLI files byte-identical" : v.detail;
  return v;
}

Verdict scaling_check() {
  Verdict v;
  const std::vector<double> xs{50.0, 75.0, 100.0, 125.0, 146.0};
  std::vector<double> ys;
  for (double L : xs) ys.push_back(std::log10(brp_intensity_bound(0.5, {L, kLoss}, kGys).mu_b_min));
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  v.check(std::fabs(slope - 0.0210) <= 1e-4, fmt::format("slope {:.6f}", slope));
  v.detail = v.pass ? fmt::format("slope = {:.6f} per km", slope) : v.detail;
  return v;
}

Verdict property_check() {
  Verdict v;
  std::mt19937_64 gen(314159);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kTrials = 10'000;
  int entropy = 0, ordering = 0, decomposition = 0, identity = 0, clamping = 0;
  for (int i = 0; i < kTrials; ++i) {
    const double p = u(gen);
    if (std::fabs(binary_entropy(p) - binary_entropy(1.0 - p)) > 1e-12) ++entropy;

    const double mu = std::exp(std::log(1e-3) + u(gen) * (std::log(10.0) - std::log(1e-3)));
    const double eta = std::exp(std::log(1e-9) + u(gen) * (std::log(1.0) - std::log(1e-9)));
    const YieldPair y = yields({mu, 0.0}, eta);
    if (!(y.y_1 <= y.y_exp)) ++ordering;

    const DetectorParams det{u(gen), 1e-7 + 1e-4 * u(gen), 0.1 * u(gen), 0.5};
    const SourceParams source{0.05 + 1.95 * u(gen), 0.0};
    const ChannelParams channel{200.0 * u(gen), kLoss};
    const SecurityReport r = evaluate_point(source, channel, det);
    if (r.yields.y_exp > 0.0) {
      const double d_eve = std::min(0.5, r.d_bob * std::exp(source.mu_s));
      const double d_prime = 0.5 - std::sqrt(d_eve * (1.0 - d_eve));
      const double expected = (r.yields.y_exp - r.yields.y_1) / r.yields.y_exp +
                              std::exp(-source.mu_s) * (1.0 - binary_entropy(d_prime));
      if (r.i_ae != r.i_ae_multi + r.i_ae_single || std::fabs(r.i_ae - expected) > 1e-12) ++decomposition;
      const double scale = std::max(std::fabs(r.r_bob), std::fabs(r.r_eve));
      const double direct = 0.5 * r.yields.y_exp * (r.i_ab - r.i_ae);
      if (r.r_s != r.r_bob - r.r_eve || std::fabs(r.r_s - direct) > 1e-15 * scale) ++identity;
    }

    const double mu_s = 2.0 * u(gen);
    const double d = 0.5 * u(gen);
    const ClampedProbability de = eve_error_rate(mu_s, d);
    const double raw = d * std::exp(mu_s);
    const bool ok = raw >= 0.5 ? (de.value == 0.5 && de.clamped &&
                                  std::fabs(eve_info_single(mu_s, d) - std::exp(-mu_s)) <= 1e-15)
                               : (de.value == raw && !de.clamped);
    if (!ok) ++clamping;
  }
  v.check(entropy == 0, fmt::format("entropy symmetry {} failures", entropy));
  v.check(ordering == 0, fmt::format("yield ordering {} failures", ordering));
  v.check(decomposition == 0, fmt::format("I_AE decomposition {} failures", decomposition));
  v.check(identity == 0, fmt::format("r_s identity {} failures", identity));
  v.check(clamping == 0, fmt::format("D_Eve clamping {} failures", clamping));
  v.detail = v.pass ? fmt::format("5 properties x {} inputs, no failures", kTrials) : v.detail;
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"secure distance at mu_s = 0.5", secure_distance_check},
      {"optimal signal intensity", optimal_intensity_check},
      {"BRP intensity bound", brp_bound_check},
      {"disturbance bounds", disturbance_bound_check},
      {"transmittance and link budget", link_budget_check},
      {"Monte Carlo agreement", monte_carlo_check},
      {"determinism", determinism_check},
      {"BRP bound scaling", scaling_check},
      {"property suites", property_check},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("[%s] criterion %zu: %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
  }
  std::fflush(stdout);
  return failed;
}
