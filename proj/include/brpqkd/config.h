#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "brpqkd/link_budget.h"
#include "brpqkd/monte_carlo.h"
#include "brpqkd/photon_stats.h"

namespace brpqkd {

// Everything a command needs. Built as preset -> config file -> flags.
struct ExperimentConfig {
  std::string preset = "gys2004";
  SourceParams source{0.5, 2.0e5};
  ChannelParams channel{146.0, 0.21};
  DetectorParams det;
  EvePolicy eve;
  OpticalChain chain;
  double afterpulse_prob = 0.008;
  bool add_crosstalk = false;
  double suppression_budget = 1.0e-3;

  std::uint64_t n_pulses = 1'000'000;
  std::uint64_t seed = 42;
  int threads = 0;

  std::vector<double> mu_s_grid;    // optimize/sweep intensities
  std::vector<double> length_grid;  // sweep distances, km
  std::vector<double> d_grid;       // disturbance sweep

  // Checks every module invariant; throws std::invalid_argument naming the key.
  void validate() const;
};

// Known preset names: "gys2004", "ideal".
ExperimentConfig make_preset(std::string_view name);

// Every key accepted in config files and as --<key> flags.
const std::vector<std::string>& setting_keys();

// Applies one key=value pair. Throws std::invalid_argument naming the key.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Flat "key = value" lines; '#' starts a comment. Keys and values trimmed.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Parses "start:step:stop" or a comma-separated list.
std::vector<double> parse_grid(std::string_view key, std::string_view text);

double parse_double(std::string_view key, std::string_view text);

}  // namespace brpqkd
