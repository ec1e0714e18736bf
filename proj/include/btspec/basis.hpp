// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace btspec {

enum class Geometry { Sphere, ReducedSphere, Disk, Interval, Cylinder };

std::string geometry_name(Geometry g);
Geometry geometry_from_name(const std::string& s);

// sphere: n,k,m; reduced sphere: n,k; disk: n,k,l; interval: m; cylinder: n,k,l,m.
// k counts from 0 (k = 0 is the first zero, or the constant mode for n = 0).
struct BasisIndex {
  int n = 0;
  int k = 0;
  int m = 0;
  int l = 1;
  bool operator==(const BasisIndex&) const = default;
};

struct BasisSet {
  Geometry geometry = Geometry::Sphere;
  double R = 1.0;  // reference length
  double H = 1.0;  // cylinder height or interval length, same units as R
  std::vector<BasisIndex> index;
  std::vector<double> eigenvalue;  // dimensionless R^2 lambda
  std::vector<double> alpha;       // radial zero, or 0 for interval
  std::vector<int> degeneracy_class;
  std::vector<bool> accidental_class;  // class groups more than one family

  std::size_t size() const { return index.size(); }
  bool complex_basis() const { return geometry == Geometry::Sphere; }
  double aspect() const { return H / R; }
  int num_classes() const { return degeneracy_class.empty() ? 0 : degeneracy_class.back() + 1; }
  std::string label(std::size_t i) const;
};

inline constexpr double kBasisDegeneracyTol = 1e-10;

BasisSet build_sphere_basis(int N);
BasisSet build_reduced_sphere_basis(int N);
BasisSet build_disk_basis(int N);
BasisSet build_interval_basis(int N, double H = 1.0);
BasisSet build_cylinder_basis(int N, double R = 1.0, double H = 1.0);
BasisSet build_basis(Geometry g, int N, double R = 1.0, double H = 1.0);

// Position of m in the sequence 0, -1, +1, -2, +2, ...
int m_rank(int m);

}  // namespace btspec
