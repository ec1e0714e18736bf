// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "btspec/basis.hpp"
#include "btspec/common.hpp"

namespace btspec {

using Point3 = std::array<double, 3>;

bool inside(const BasisSet& basis, const Point3& p, double slack = 1e-12);

// All basis functions at one point (lengths in units of R); row k = u_k(p).
CVector eval_basis(const BasisSet& basis, const Point3& p);

// v(p) = sum_k X(j,k) u_k(p); points outside the domain give NaN.
std::vector<cd> eval_eigenfunction(const CVector& row, const BasisSet& basis,
                                   const std::vector<Point3>& points);

struct FieldGrid {
  int j = 0;  // 0-based branch index
  double g = 0.0;
  int nx = 0, nz = 0;
  std::vector<double> x, z;      // sample coordinates, row-major (z outer, x inner)
  std::vector<cd> values;
  std::vector<char> inside_mask;
};

// xz projection (y = 0) over the bounding box of the section.
FieldGrid export_projection(const CVector& row, const BasisSet& basis, int j, double g,
                            int nx = 201, int nz = 201);

}  // namespace btspec
