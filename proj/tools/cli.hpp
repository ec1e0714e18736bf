// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "btspec/branchpoints.hpp"
#include "config.hpp"

namespace btspec::cli {

inline constexpr const char* kOutputDirEnv = "BTSPEC_OUTPUT_DIR";

enum ExitCode { kOk = 0, kConfigError = 2, kDomainError = 3, kNumericalError = 4 };

// Directory for outputs: BTSPEC_OUTPUT_DIR if set, else cfg.output_dir.
std::string output_dir(const RunConfig& cfg);

std::vector<std::string> cmd_sweep(const RunConfig& cfg);
std::vector<std::string> cmd_signal(const RunConfig& cfg);
std::vector<std::string> cmd_fieldmap(const RunConfig& cfg, int j, double g);
std::vector<std::string> cmd_dump(const RunConfig& cfg);

// Full command line entry point; returns the process exit code.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

std::string fmt(double v);

nlohmann::json branchpoint_to_json(const BranchPoint& bp);
BranchPoint branchpoint_from_json(const nlohmann::json& j);

}  // namespace btspec::cli
