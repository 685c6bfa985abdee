#include "brpqkd/cli.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brpqkd/link_budget.h"
#include "brpqkd/monte_carlo.h"
#include "brpqkd/optimizer.h"
#include "brpqkd/security_model.h"

namespace brpqkd {

namespace {

Cell num(double x) { return Cell{x}; }

OpticalChain chain_for(const ExperimentConfig& config) {
  OpticalChain chain = config.chain;
  chain.channel = config.channel;
  return chain;
}

McConfig mc_config(const ExperimentConfig& config) {
  McConfig mc;
  mc.n_pulses = config.n_pulses;
  mc.source = config.source;
  mc.channel = config.channel;
  mc.det = effective_detector(config);
  mc.eve = config.eve;
  mc.seed = config.seed;
  return mc;
}

void add_validation_row(Table& t, const std::string& name, const Estimate& est, double analytic,
                        bool& all_pass) {
  const double z = z_score(est, analytic);
  const bool pass = std::fabs(z) <= kMaxAbsZ;
  all_pass = all_pass && pass;
  t.add_row({name, num(est.value), num(est.std_error), static_cast<std::int64_t>(est.trials),
             num(analytic), num(z), pass});
}

}  // namespace

DetectorParams effective_detector(const ExperimentConfig& config) {
  DetectorParams det = config.det;
  if (config.add_crosstalk) {
    const double leak = propagate(chain_for(config)).switch_leak_at_signal_detector;
    det.y0 = std::min(1.0, det.y0 + crosstalk_false_click(leak, det.eta_d));
  }
  return det;
}

CommandOutput cmd_evaluate(const ExperimentConfig& config) {
  config.validate();
  const SecurityReport r = evaluate_point(config.source, config.channel, effective_detector(config));

  CommandOutput out;
  out.table.columns = {"mu_s",  "length_km",  "eta_t",       "y_exp", "y_1",   "d_bob",
                       "d_eve", "d_prime",    "i_ab",        "i_ae_multi",     "i_ae_single",
                       "i_ae",  "r_bob",      "r_eve",       "r_s",   "secure", "d_bob_clamped",
                       "d_eve_clamped"};
  out.table.add_row({num(config.source.mu_s), num(config.channel.length_km),
                     num(channel_transmittance(config.channel)), num(r.yields.y_exp),
                     num(r.yields.y_1), num(r.d_bob), num(r.d_eve), num(r.d_prime), num(r.i_ab),
                     num(r.i_ae_multi), num(r.i_ae_single), num(r.i_ae), num(r.r_bob),
                     num(r.r_eve), num(r.r_s), r.secure, r.d_bob_clamped, r.d_eve_clamped});
  out.exit_code = r.secure ? kExitOk : kExitInsecure;
  return out;
}

CommandOutput cmd_optimize(const ExperimentConfig& config) {
  config.validate();
  const DetectorParams det = effective_detector(config);
  const OptimalIntensity best =
      optimal_signal_intensity(det, config.channel.loss_db_per_km, config.mu_s_grid);
  const BrpBound bound =
      brp_intensity_bound(best.mu_s_star, ChannelParams{best.distance.km, config.channel.loss_db_per_km},
                          det, config.suppression_budget);

  CommandOutput out;
  out.table.columns = {"mu_s_star", "max_distance_km", "unbounded", "plateau", "mu_b_min",
                       "g_b0_at_bound", "suppression_budget"};
  out.table.add_row({num(best.mu_s_star), num(best.distance.km), best.distance.unbounded,
                     best.plateau, num(bound.mu_b_min), num(bound.g_b0_at_bound),
                     num(bound.suppression_budget)});
  return out;
}

CommandOutput cmd_sweep(const ExperimentConfig& config, std::string_view axis) {
  config.validate();
  const DetectorParams det = effective_detector(config);
  CommandOutput out;

  if (axis == "distance") {
    if (config.length_grid.empty()) throw std::invalid_argument("length-grid: empty");
    out.table.columns = {"mu_s", "length_km", "r_bob", "r_eve", "r_s"};
    for (double L : config.length_grid) {
      const SecurityReport r =
          evaluate_ideal_point(ChannelParams{L, config.channel.loss_db_per_km}, det);
      out.table.add_row({std::string("ideal"), num(L), num(r.r_bob), num(r.r_eve), num(r.r_s)});
    }
    SweepGrid grid{config.mu_s_grid, config.length_grid, det, config.channel.loss_db_per_km,
                   config.source.mu_b};
    for (const SweepRow& row : sweep(grid)) {
      out.table.add_row({num(row.mu_s), num(row.length_km), num(row.report.r_bob),
                         num(row.report.r_eve), num(row.report.r_s)});
    }
    return out;
  }

  if (axis == "disturbance") {
    if (config.d_grid.empty()) throw std::invalid_argument("d-grid: empty");
    out.table.columns = {"mu_s", "d", "i_ab", "i_ae"};
    for (double d : config.d_grid) {
      out.table.add_row({std::string("ideal"), num(d), num(mutual_info_ab(d)), num(eve_info_ideal(d))});
    }
    for (double mu : config.mu_s_grid) {
      for (double d : config.d_grid) {
        out.table.add_row({num(mu), num(d), num(mutual_info_ab(d)), num(eve_info_small_eta(mu, d))});
      }
    }
    return out;
  }

  throw std::invalid_argument("axis: unknown axis '" + std::string(axis) +
                              "' (expected distance or disturbance)");
}

CommandOutput cmd_mc_validate(const ExperimentConfig& config) {
  config.validate();
  if (config.n_pulses < kMinValidationPulses) {
    throw std::invalid_argument("n-pulses: mc-validate needs at least " +
                                std::to_string(kMinValidationPulses) + " pulses");
  }
  const McConfig mc = mc_config(config);

  CommandOutput out;
  out.table.columns = {"quantity", "estimate", "std_error", "trials", "analytic", "z", "pass"};
  bool all_pass = true;

  if (mc.eve.mode == EveMode::kNone) {
    const McResult r = simulate(mc, config.threads);
    const double eta_total = channel_transmittance(mc.channel) * mc.det.eta_d;
    const YieldPair y = yields(mc.source, eta_total);
    const double d_bob =
        y.y_exp > 0.0 ? std::min(1.0, (mc.det.e_0 * mc.det.y0 + mc.det.e_detector * y.y_exp) / y.y_exp)
                      : 0.0;
    add_validation_row(out.table, "y_exp", r.est_y_exp, y.y_exp, all_pass);
    add_validation_row(out.table, "y_1", r.est_y_1, y.y_1, all_pass);
    add_validation_row(out.table, "d_bob", r.est_d_bob, d_bob, all_pass);
    add_validation_row(out.table, "g_b0", r.est_g_b0, brp_empty_prob(mc.source.mu_b, eta_total),
                       all_pass);
  } else {
    const McResult r = simulate_attack(mc, config.threads);
    const McExpectation e = expected_rates(mc);
    add_validation_row(out.table, "y_exp", r.est_y_exp, e.y_exp, all_pass);
    add_validation_row(out.table, "y_1", r.est_y_1, e.y_1, all_pass);
    add_validation_row(out.table, "d_bob", r.est_d_bob, e.d_bob, all_pass);
    add_validation_row(out.table, "g_b0", r.est_g_b0, e.g_b0, all_pass);
    if (r.interference_error_rate.trials > 0) {
      add_validation_row(out.table, "interference_error_rate", r.interference_error_rate,
                         e.interference_error_rate, all_pass);
    }
  }
  out.exit_code = all_pass ? kExitOk : kExitMcFailure;
  return out;
}

CommandOutput cmd_budget(const ExperimentConfig& config) {
  config.validate();
  const OpticalChain chain = chain_for(config);
  const LinkBudgetReport r = propagate(chain);

  CommandOutput out;
  out.table.columns = {"quantity", "value"};
  auto row = [&](const char* name, double v) { out.table.add_row({std::string(name), num(v)}); };
  row("source_intensity", chain.source_intensity);
  row("channel_transmittance", channel_transmittance(chain.channel));
  row("brp_at_alice", r.brp_at_alice);
  row("signal_at_alice", r.signal_at_alice);
  row("brp_at_bob", r.brp_at_bob);
  row("signal_at_bob", r.signal_at_bob);
  row("dim_at_bob", r.dim_at_bob);
  row("switch_leak_at_signal_detector", r.switch_leak_at_signal_detector);
  row("crosstalk_false_click", crosstalk_false_click(r.switch_leak_at_signal_detector, config.det.eta_d));
  row("afterpulse_probability", config.afterpulse_prob);
  row("afterpulse_error", afterpulse_error(config.afterpulse_prob));
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Security analysis for weak-pulse QKD guarded by bright reference pulses"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string preset;
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  std::string axis;
  app.add_option("--preset", preset, "gys2004 or ideal");
  app.add_option("--config", config_path, "flat key = value parameter file");
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write output here instead of stdout");

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const std::string& key : setting_keys()) {
    flag_options[key] = app.add_option("--" + key, flag_values[key]);
  }

  CLI::App* evaluate = app.add_subcommand("evaluate", "security report at one (mu_s, L) point");
  CLI::App* optimize = app.add_subcommand("optimize", "optimal mu_s, max distance, BRP bound");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "mutual-information or key-rate curves");
  sweep_cmd->add_option("--axis", axis, "distance or disturbance")->required();
  CLI::App* mc_validate = app.add_subcommand("mc-validate", "Monte Carlo vs analytic model");
  CLI::App* budget = app.add_subcommand("budget", "optical link budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::vector<std::pair<std::string, std::string>> file_entries;
    std::string preset_name = "gys2004";
    if (!config_path.empty()) {
      file_entries = read_config_file(config_path);
      for (const auto& [k, v] : file_entries) {
        if (k == "preset") preset_name = v;
      }
    }
    if (!preset.empty()) preset_name = preset;

    ExperimentConfig config = make_preset(preset_name);
    for (const auto& [k, v] : file_entries) {
      if (k != "preset") apply_setting(config, k, v);
    }
    for (const auto& [key, opt] : flag_options) {
      if (opt->count() > 0) apply_setting(config, key, flag_values[key]);
    }

    CommandOutput result;
    if (*evaluate) {
      result = cmd_evaluate(config);
    } else if (*optimize) {
      result = cmd_optimize(config);
    } else if (*sweep_cmd) {
      result = cmd_sweep(config, axis);
    } else if (*mc_validate) {
      result = cmd_mc_validate(config);
    } else if (*budget) {
      result = cmd_budget(config);
    }

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw std::invalid_argument("out: cannot open '" + out_path + "' for writing");
    }
    std::ostream& sink = out_path.empty() ? out : file;
    if (format == "json") {
      result.table.write_json(sink);
    } else {
      result.table.write_csv(sink);
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace brpqkd
