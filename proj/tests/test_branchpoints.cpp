// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "btspec/branchpoints.hpp"
#include "btspec/matrices.hpp"
#include "btspec/specfun.hpp"

using namespace btspec;

namespace {

std::vector<BranchPoint> run(const OperatorMatrices& M, const CMatrix& B, double gmax, int tracked) {
  SweepOptions o;
  o.g_max = gmax;
  o.step = 0.05;
  o.tracked = tracked;
  const BranchSweep s = run_sweep(M, B, o);
  return find_branch_points(M, B, s);
}

}  // namespace

TEST_CASE("disk branch points") {
  const OperatorMatrices M = assemble(build_disk_basis(80));
  const auto bps = run(M, M.Bx, 15.0, 12);
  REQUIRE(bps.size() == 3);
  const double ref[] = {3.76, 9.39, 13.87};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(bps[i].g_star - ref[i]) < 0.02);
    CHECK(bps[i].order == 2);
    CHECK(bps[i].refined);
    CHECK(bps[i].bracket_hi - bps[i].bracket_lo <= 1.01e-8);
    CHECK(bps[i].principal_angle < 1e-2);
    CHECK(bps[i].self_product_min < 1e-2);
    CHECK_FALSE(bps[i].order_unexpected);
  }
}

TEST_CASE("interval branch point from the sweep matches the analytic law") {
  const OperatorMatrices M = assemble(build_interval_basis(40, 1.0));
  const auto bps = run(M, M.Bz, 20.0, 6);
  REQUIRE(!bps.empty());
  const auto an = interval_branch_points_analytic(2);
  CHECK(std::abs(bps[0].g_star - an[0]) < 0.01);
  CHECK(std::abs(an[0] - 18.06) < 0.05);
  CHECK(std::abs(an[1] - 229.35) < 1.0);
  CHECK(bps[0].branches == std::vector<int>{0, 1});
}

TEST_CASE("classification counts coalescing eigenvalues") {
  const OperatorMatrices M = assemble(build_disk_basis(80));
  const auto bps = run(M, M.Bx, 4.0, 6);
  REQUIRE(bps.size() == 1);
  CHECK(classify_order(M, M.Bx, bps[0].g_star, bps[0].center) == 2);
  CHECK(classify_order(M, M.Bx, 2.0, bps[0].center) == 1);
}

TEST_CASE("refinement narrows a coarse bracket") {
  const OperatorMatrices M = assemble(build_disk_basis(80));
  BranchPoint bp;
  bp.order = 2;
  bp.branches = {0, 1};
  bp.bracket_lo = 3.7;
  bp.bracket_hi = 3.8;
  bp.center = 2.3;
  const double g = refine(M, M.Bx, bp);
  CHECK(bp.bracket_hi - bp.bracket_lo <= 1.01e-8);
  CHECK(std::abs(g - 3.76) < 0.01);
}

TEST_CASE("an empty sweep has no branch points") {
  const OperatorMatrices M = assemble(build_disk_basis(40));
  CHECK(run(M, M.Bx, 3.0, 6).empty());
}
