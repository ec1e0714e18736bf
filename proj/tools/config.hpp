// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "btspec/basis.hpp"

namespace btspec::cli {

// Documented keys; see README for meaning and units.
struct RunConfig {
  std::string geometry = "sphere";
  double R_um = 10.0;
  double H_um = 10.0;
  double gamma = 2.675e8;  // rad/(s T)
  double D0 = 2.3e-9;      // m^2/s
  std::optional<double> G_mT_per_m;
  std::optional<double> g_bar;  // dimensionless alternative to G_mT_per_m
  double eta_deg = 90.0;
  double theta_deg = 90.0;
  double phi_deg = 0.0;
  int N = 333;
  double g_max = 30.0;
  double g_step = 0.05;
  int tracked = 17;
  std::vector<double> deltas_ms;
  std::vector<double> t_bars;  // dimensionless alternative to deltas_ms
  long walkers = 0;
  double mc_dt = 5e-4;
  std::uint64_t seed = 1;
  int field_j = 1;
  double field_g = 0.0;
  int resolution = 201;
  unsigned threads = 0;
  std::string output_dir = ".";

  bool operator==(const RunConfig&) const = default;

  Geometry geom() const;
  // Dimensionless gradient, either given or derived from SI inputs.
  double gradient_bar() const;
  // Pulse durations as dimensionless times.
  std::vector<double> times_bar() const;
  bool si_times() const { return !deltas_ms.empty(); }
};

// Flat "key = value" text, '#' comments; lists are comma separated.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
const std::vector<std::string>& config_keys();
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace btspec::cli
