// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "btspec/common.hpp"
#include "btspec/kernels.hpp"

namespace btspec {

struct WalkConfig {
  kernels::Domain domain = kernels::Domain::Sphere;
  double R = 1.0;       // dimensionless radius
  double H = 1.0;       // cylinder height in units of the radius
  long walkers = 100000;
  double dt = 5e-4;     // dimensionless time step (upper bound; rounded to divide t_bar)
  double g_bar = 0.0;
  double t_bar = 0.0;   // pulse duration; two back-to-back pulses of opposite sign
  std::array<double, 3> direction{0.0, 0.0, 1.0};
  std::uint64_t seed = 1;
  unsigned threads = 0;
  long block = 4096;    // walkers per deterministic substream
  const kernels::Table* kernel = nullptr;  // default: kernels::active()
};

struct WalkResult {
  cd S = 1.0;
  double stderr_ = 0.0;
  long steps = 0;
  std::vector<std::array<double, 3>> positions;  // final positions when requested
};

void validate(const WalkConfig& cfg);
WalkResult mc_walk(const WalkConfig& cfg, bool keep_positions = false);
inline WalkResult mc_signal(const WalkConfig& cfg) { return mc_walk(cfg, false); }

}  // namespace btspec
