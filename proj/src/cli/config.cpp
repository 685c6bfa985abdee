#include "brpqkd/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace brpqkd {

namespace {

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view)>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw std::invalid_argument(std::string(key) + ": " + std::string(why) + " (got '" +
                              std::string(value) + "')");
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    // Accept integral scientific notation such as 1e7.
    const double d = parse_double(key, text);
    if (d < 0.0 || d != std::floor(d) || d > 1.8e19) bad_value(key, text, "expected a non-negative integer");
    return static_cast<std::uint64_t>(d);
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_value(key, text, "expected true or false");
}

Setter number(double ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view k, std::string_view v) {
    c.*field = parse_double(k, v);
  };
}

template <typename Member>
Setter nested(Member member) {
  return [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
    member(c) = parse_double(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"mu-s", nested([](ExperimentConfig& c) -> double& { return c.source.mu_s; })},
      {"mu-b", nested([](ExperimentConfig& c) -> double& { return c.source.mu_b; })},
      {"length-km", nested([](ExperimentConfig& c) -> double& { return c.channel.length_km; })},
      {"loss-db-km",
       nested([](ExperimentConfig& c) -> double& { return c.channel.loss_db_per_km; })},
      {"eta-d", nested([](ExperimentConfig& c) -> double& { return c.det.eta_d; })},
      {"y0", nested([](ExperimentConfig& c) -> double& { return c.det.y0; })},
      {"e-detector", nested([](ExperimentConfig& c) -> double& { return c.det.e_detector; })},
      {"e-0", nested([](ExperimentConfig& c) -> double& { return c.det.e_0; })},
      {"eve-mode",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         v = trim(v);
         if (v == "none") {
           c.eve.mode = EveMode::kNone;
         } else if (v == "pns") {
           c.eve.mode = EveMode::kPns;
         } else {
           bad_value(k, v, "expected none or pns");
         }
       }},
      {"suppress-fraction",
       nested([](ExperimentConfig& c) -> double& { return c.eve.suppress_fraction; })},
      {"eve-lossless",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.eve.forward_multiphoton_lossless = parse_bool(k, v);
       }},
      {"n-pulses",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.n_pulses = parse_count(k, v);
       }},
      {"seed",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.seed = parse_count(k, v);
       }},
      {"threads",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const std::uint64_t t = parse_count(k, v);
         if (t > 1024) bad_value(k, v, "at most 1024 threads");
         c.threads = static_cast<int>(t);
       }},
      {"source-intensity",
       nested([](ExperimentConfig& c) -> double& { return c.chain.source_intensity; })},
      {"alice-split",
       nested([](ExperimentConfig& c) -> double& { return c.chain.alice_long_fraction; })},
      {"bob-split",
       nested([](ExperimentConfig& c) -> double& { return c.chain.bob_long_fraction; })},
      {"alice-atten-db",
       nested([](ExperimentConfig& c) -> double& { return c.chain.alice_attenuation_db; })},
      {"bob-atten-db",
       nested([](ExperimentConfig& c) -> double& { return c.chain.bob_attenuation_db; })},
      {"crosstalk-db",
       nested([](ExperimentConfig& c) -> double& { return c.chain.switch_crosstalk_db; })},
      {"afterpulse-prob", number(&ExperimentConfig::afterpulse_prob)},
      {"add-crosstalk",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.add_crosstalk = parse_bool(k, v);
       }},
      {"budget", number(&ExperimentConfig::suppression_budget)},
      {"mu-s-grid",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.mu_s_grid = parse_grid(k, v);
       }},
      {"length-grid",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.length_grid = parse_grid(k, v);
       }},
      {"d-grid",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.d_grid = parse_grid(k, v);
       }},
  };
  return table;
}

std::vector<double> range(double start, double step, double stop) {
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
  return values;
}

}  // namespace

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    bad_value(key, text, "expected a finite number");
  }
  return v;
}

std::vector<double> parse_grid(std::string_view key, std::string_view text) {
  text = trim(text);
  std::vector<std::string_view> parts;
  const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
  std::size_t pos = 0;
  for (;;) {
    const auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }

  std::vector<double> values;
  if (sep == ':') {
    if (parts.size() != 3) bad_value(key, text, "expected start:step:stop");
    const double start = parse_double(key, parts[0]);
    const double step = parse_double(key, parts[1]);
    const double stop = parse_double(key, parts[2]);
    if (!(step > 0.0) || stop < start) bad_value(key, text, "need step > 0 and stop >= start");
    values = range(start, step, stop);
  } else {
    for (auto p : parts) values.push_back(parse_double(key, p));
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) bad_value(key, text, "values must be strictly increasing");
  }
  return values;
}

ExperimentConfig make_preset(std::string_view name) {
  ExperimentConfig c;
  c.mu_s_grid = range(0.1, 0.05, 1.0);
  c.length_grid = range(0.0, 1.0, 200.0);
  c.d_grid = range(0.0, 0.005, 0.25);
  if (name == "gys2004") {
    c.preset = "gys2004";
    c.det = DetectorParams{0.045, 1.7e-6, 0.033, 0.5};
    c.channel.loss_db_per_km = 0.21;
  } else if (name == "ideal") {
    c.preset = "ideal";
    c.det = DetectorParams{0.045, 0.0, 0.0, 0.5};
    c.channel.loss_db_per_km = 0.21;
  } else {
    throw std::invalid_argument("preset: unknown preset '" + std::string(name) +
                                "' (known: gys2004, ideal)");
  }
  return c;
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw std::invalid_argument(std::string(key) + ": unknown setting");
  }
  it->second(config, key, value);
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? end : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    entries.emplace_back(std::string(trim(line.substr(0, eq))),
                         std::string(trim(line.substr(eq + 1))));
  }
  return entries;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void ExperimentConfig::validate() const {
  source.validate();
  channel.validate();
  det.validate();
  eve.validate();
  chain.validate();
  if (!(afterpulse_prob >= 0.0 && afterpulse_prob <= 1.0)) {
    throw std::invalid_argument("afterpulse-prob: must lie in [0, 1]");
  }
  if (!(suppression_budget >= 0.0)) throw std::invalid_argument("budget: must be >= 0");
  if (mu_s_grid.empty()) throw std::invalid_argument("mu-s-grid: empty");
  for (double mu : mu_s_grid) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu-s-grid: values must be > 0");
  }
  for (double L : length_grid) {
    if (!(L >= 0.0)) throw std::invalid_argument("length-grid: values must be >= 0");
  }
  for (double d : d_grid) {
    if (!(d >= 0.0 && d <= 0.5)) throw std::invalid_argument("d-grid: values must lie in [0, 0.5]");
  }
}

}  // namespace brpqkd
