// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace btspec::specfun {

// First zero of Ai'.
inline constexpr double kAiryPrimeZero1 = -1.018792971647471;
inline constexpr double kMinusTwoThirds = -2.0 / 3.0;

enum class ZeroKind { DerivJ, DerivSphericalJ, JMinusTwoThirds };

struct ZeroTable {
  ZeroKind kind = ZeroKind::DerivJ;
  double order = 0.0;
  std::vector<double> zeros;
  double tolerance = 1e-12;
};

// J_nu(z) for integer nu >= 0 or nu = -2/3.
double bessel_j(double nu, double z);
double bessel_j_prime(double nu, double z);
double sph_bessel_j(int n, double z);
double sph_bessel_j_prime(int n, double z);
double airy_ai_prime(double x);

double target_value(ZeroKind kind, double order, double z);

ZeroTable zeros_dJ(int n, int count);
ZeroTable zeros_dj_spherical(int n, int count);
// All positive zeros not exceeding limit.
ZeroTable zeros_dJ_below(int n, double limit);
ZeroTable zeros_dj_spherical_below(int n, double limit);
std::vector<double> interval_branch_constants(int count);

// McMahon expansion for the k-th positive zero of J'_n (k >= 1).
double mcmahon_dJ(int n, int k);
// Same for j'_n via order n + 1/2 with the spherical correction.
double mcmahon_dj_spherical(int n, int k);

}  // namespace btspec::specfun
