// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace btspec {

// Minimum-cost perfect assignment for a square cost matrix; result[row] = column.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

}  // namespace btspec
