// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "btspec/common.hpp"

namespace btspec::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
}

long to_long(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<long>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "geometry", "R_um",  "H_um",     "gamma",   "D0",         "G_mT_per_m", "g_bar",
      "eta_deg",  "theta_deg", "phi_deg", "N",    "g_max",      "g_step",     "tracked",
      "deltas_ms", "t_bars", "walkers", "mc_dt",  "seed",       "field_j",    "field_g",
      "resolution", "threads", "output_dir"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "geometry") c.geometry = v;
  else if (key == "R_um") c.R_um = to_double(key, v);
  else if (key == "H_um") c.H_um = to_double(key, v);
  else if (key == "gamma") c.gamma = to_double(key, v);
  else if (key == "D0") c.D0 = to_double(key, v);
  else if (key == "G_mT_per_m") c.G_mT_per_m = to_double(key, v);
  else if (key == "g_bar") c.g_bar = to_double(key, v);
  else if (key == "eta_deg") c.eta_deg = to_double(key, v);
  else if (key == "theta_deg") c.theta_deg = to_double(key, v);
  else if (key == "phi_deg") c.phi_deg = to_double(key, v);
  else if (key == "N") c.N = static_cast<int>(to_long(key, v));
  else if (key == "g_max") c.g_max = to_double(key, v);
  else if (key == "g_step") c.g_step = to_double(key, v);
  else if (key == "tracked") c.tracked = static_cast<int>(to_long(key, v));
  else if (key == "deltas_ms") c.deltas_ms = to_list(key, v);
  else if (key == "t_bars") c.t_bars = to_list(key, v);
  else if (key == "walkers") c.walkers = to_long(key, v);
  else if (key == "mc_dt") c.mc_dt = to_double(key, v);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_long(key, v));
  else if (key == "field_j") c.field_j = static_cast<int>(to_long(key, v));
  else if (key == "field_g") c.field_g = to_double(key, v);
  else if (key == "resolution") c.resolution = static_cast<int>(to_long(key, v));
  else if (key == "threads") c.threads = static_cast<unsigned>(to_long(key, v));
  else if (key == "output_dir") c.output_dir = v;
  else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text, RunConfig c) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(c, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

Geometry RunConfig::geom() const { return geometry_from_name(geometry); }

double RunConfig::gradient_bar() const {
  if (g_bar) return *g_bar;
  if (G_mT_per_m) {
    const double R = R_um * 1e-6;
    return gamma * (*G_mT_per_m * 1e-3) / D0 * R * R * R;
  }
  return 0.0;
}

std::vector<double> RunConfig::times_bar() const {
  if (!t_bars.empty()) return t_bars;
  std::vector<double> out;
  const double R = R_um * 1e-6;
  for (double d : deltas_ms) out.push_back(D0 * d * 1e-3 / (R * R));
  return out;
}

void validate(const RunConfig& c) {
  (void)c.geom();
  if (c.G_mT_per_m && c.g_bar) throw ConfigError("give either G_mT_per_m or g_bar, not both");
  if (!c.deltas_ms.empty() && !c.t_bars.empty())
    throw ConfigError("give either deltas_ms or t_bars, not both");
  if (!(c.R_um > 0) || !(c.H_um > 0)) throw ConfigError("R_um and H_um must be positive");
  if (!(c.D0 > 0) || !(c.gamma > 0)) throw ConfigError("D0 and gamma must be positive");
  if (c.N < 1) throw ConfigError("N must be >= 1");
  if (c.tracked < 1) throw ConfigError("tracked must be >= 1");
  if (c.N < 5 * c.tracked && c.N >= 5)
    throw ConfigError("N must be at least five times the number of tracked branches");
  if (!(c.g_step > 0)) throw ConfigError("g_step must be positive");
  if (c.walkers < 0) throw ConfigError("walkers must be >= 0");
  if (c.resolution < 1) throw ConfigError("resolution must be >= 1");
  for (double t : c.times_bar())
    if (t < 0) throw ConfigError("pulse durations must be non-negative");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["geometry"] = c.geometry;
  j["R_um"] = c.R_um;
  j["H_um"] = c.H_um;
  j["gamma"] = c.gamma;
  j["D0"] = c.D0;
  j["G_mT_per_m"] = c.G_mT_per_m ? nlohmann::json(*c.G_mT_per_m) : nlohmann::json(nullptr);
  j["g_bar"] = c.g_bar ? nlohmann::json(*c.g_bar) : nlohmann::json(nullptr);
  j["eta_deg"] = c.eta_deg;
  j["theta_deg"] = c.theta_deg;
  j["phi_deg"] = c.phi_deg;
  j["N"] = c.N;
  j["g_max"] = c.g_max;
  j["g_step"] = c.g_step;
  j["tracked"] = c.tracked;
  j["deltas_ms"] = c.deltas_ms;
  j["t_bars"] = c.t_bars;
  j["walkers"] = c.walkers;
  j["mc_dt"] = c.mc_dt;
  j["seed"] = c.seed;
  j["field_j"] = c.field_j;
  j["field_g"] = c.field_g;
  j["resolution"] = c.resolution;
  j["threads"] = c.threads;
  j["output_dir"] = c.output_dir;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.geometry = j.at("geometry").get<std::string>();
    c.R_um = j.at("R_um").get<double>();
    c.H_um = j.at("H_um").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.D0 = j.at("D0").get<double>();
    if (!j.at("G_mT_per_m").is_null()) c.G_mT_per_m = j.at("G_mT_per_m").get<double>();
    if (!j.at("g_bar").is_null()) c.g_bar = j.at("g_bar").get<double>();
    c.eta_deg = j.at("eta_deg").get<double>();
    c.theta_deg = j.at("theta_deg").get<double>();
    c.phi_deg = j.at("phi_deg").get<double>();
    c.N = j.at("N").get<int>();
    c.g_max = j.at("g_max").get<double>();
    c.g_step = j.at("g_step").get<double>();
    c.tracked = j.at("tracked").get<int>();
    c.deltas_ms = j.at("deltas_ms").get<std::vector<double>>();
    c.t_bars = j.at("t_bars").get<std::vector<double>>();
    c.walkers = j.at("walkers").get<long>();
    c.mc_dt = j.at("mc_dt").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.field_j = j.at("field_j").get<int>();
    c.field_g = j.at("field_g").get<double>();
    c.resolution = j.at("resolution").get<int>();
    c.threads = j.at("threads").get<unsigned>();
    c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config json: ") + e.what());
  }
  return c;
}

}  // namespace btspec::cli
