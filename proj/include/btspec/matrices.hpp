// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "btspec/basis.hpp"
#include "btspec/common.hpp"

namespace btspec {

// Row/column convention: B(a, b) = integral of u_a (x/R) conj(u_b).
// Eigenproblem: X (Lambda + i g B) = diag(lambda) X, rows of X are eigenfunctions.
struct OperatorMatrices {
  BasisSet basis;
  RVector lambda;  // diagonal of Lambda
  CMatrix Bx, By, Bz;
  CMatrix W;
  // W as signed permutation: W(i, partner[i]) = sign[i].
  std::vector<int> w_partner;
  std::vector<double> w_sign;

  Eigen::Index size() const { return lambda.size(); }
  CMatrix Lambda() const;
  bool w_is_identity() const { return !basis.complex_basis(); }
};

inline constexpr double kMinDenominator = 1e-12;

OperatorMatrices assemble_sphere(const BasisSet& basis);
OperatorMatrices assemble_reduced_sphere(const BasisSet& basis);
OperatorMatrices assemble_disk(const BasisSet& basis);
OperatorMatrices assemble_interval(const BasisSet& basis);
OperatorMatrices assemble_cylinder(const BasisSet& basis);
OperatorMatrices assemble(const BasisSet& basis);

CMatrix gradient_matrix_sphere(const OperatorMatrices& mat, double theta, double phi);
CMatrix gradient_matrix_cylinder(const OperatorMatrices& mat, double eta);
CMatrix gradient_matrix(const OperatorMatrices& mat, const std::array<double, 3>& dir);

// Closed-form element helpers, exposed for tests.
double sphere_beta(int n, double alpha);
double sphere_reduced_element(int n, double a, int n2, double a2);
double disk_beta(int n, double alpha);
double disk_element(int n, double a, int n2, double a2);
double interval_element(int m, int m2);

// Little-endian dump: uint32 geometry, uint64 N, double R, double H, then
// Lambda, Bx, By, Bz, W as row-major complex doubles.
void write_matrices(const std::string& path, const OperatorMatrices& mat);
struct MatrixDump {
  Geometry geometry;
  std::uint64_t N;
  double R, H;
  std::array<CMatrix, 5> mats;
};
MatrixDump read_matrices(const std::string& path);

}  // namespace btspec
