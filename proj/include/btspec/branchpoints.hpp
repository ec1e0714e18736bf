// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "btspec/sweep.hpp"

namespace btspec {

struct BranchPoint {
  double g_star = 0.0;
  int order = 0;
  std::vector<int> branches;  // 0-based branch indices
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double center = 0.0;         // Re of the merged eigenvalue
  double gap_min = 0.0;        // min pairwise distance of the merging eigenvalues at bracket_lo
  double self_product_min = 0.0;
  double principal_angle = 0.0;  // between the two closest merging rows at bracket_lo
  bool order_unexpected = false;
  bool refined = false;
};

struct BranchPointOptions {
  double noise_floor = 1e-9;
  double threshold = 1e-6;
  double cluster_radius = 1e-3;
  double width = 1e-8;
  unsigned threads = 0;
};

std::vector<BranchPoint> detect(const BranchSweep& sweep, const BranchPointOptions& opt = {});
double refine(const OperatorMatrices& mat, const CMatrix& B, BranchPoint& bp,
              const BranchPointOptions& opt = {});
int classify_order(const OperatorMatrices& mat, const CMatrix& B, double g_star, double center,
                   double radius = 1e-3);
// detect + refine + classify.
std::vector<BranchPoint> find_branch_points(const OperatorMatrices& mat, const CMatrix& B,
                                            const BranchSweep& sweep,
                                            const BranchPointOptions& opt = {});

std::vector<double> interval_branch_points_analytic(int count);

}  // namespace btspec
