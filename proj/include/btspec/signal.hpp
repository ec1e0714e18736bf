// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "btspec/spectrum.hpp"

namespace btspec {

// Physical pulse description in SI units; core math uses only g_bar and t_bar.
struct PulsePlan {
  double delta = 0.0;  // s
  double D0 = 2.3e-9;  // m^2/s
  double gamma = 2.675e8;  // rad/(s T)
  double G = 0.0;      // T/m
  double R = 1e-5;     // m
  double g_bar() const { return gamma * G / D0 * R * R * R; }
  double t_bar() const { return D0 * delta / (R * R); }
};

struct SignalCoefficients {
  std::vector<cd> mu;  // X(j, 0)
  CMatrix Gamma;       // conj(X) X^T
  CMatrix C;           // conj(mu_j) Gamma(j, k) mu_k
};

struct SignalResult {
  double t_bar = 0.0;
  cd value = 0.0;
  double stderr_ = 0.0;
  std::string route;
};

cd signal_matrix(const OperatorMatrices& mat, const CMatrix& B, double g_bar, double t_bar);
// Several times sharing one pair of exponentials per time.
std::vector<cd> signal_matrix(const OperatorMatrices& mat, const CMatrix& B, double g_bar,
                              const std::vector<double>& t_bars);

SignalCoefficients compute_coefficients(const Spectrum& plus, const OperatorMatrices& mat);
// Same coefficients built from an explicit -g spectrum: Gamma = X(-g) W X(g)^T.
SignalCoefficients compute_coefficients(const Spectrum& plus, const Spectrum& minus,
                                        const OperatorMatrices& mat);

cd signal_spectral(const Spectrum& plus, const Spectrum& minus, const SignalCoefficients& c,
                   double t_bar, double re_cutoff = std::numeric_limits<double>::infinity());

double signal_one_mode(double lambda1, double C11, double t_bar);
double signal_two_mode(cd lambda1, double C11, cd C12, double t_bar);

// Index of the lowest mode (Im >= 0 member of a conjugate pair) and its partner.
struct LowModes {
  int first = 0;
  int second = 1;
  bool complex_pair = false;
};
LowModes low_modes(const Spectrum& s);

// Three-term large-gradient expansion of Re lambda_1 (R^2 lambda units when R = 1).
double lambda1_asymptotic(double g_bar, double R = 1.0);

}  // namespace btspec
