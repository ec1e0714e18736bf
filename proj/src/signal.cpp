// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/signal.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "btspec/kernels.hpp"
#include "btspec/specfun.hpp"

namespace btspec {

namespace {

CMatrix expm_checked(const CMatrix& A) {
  const CMatrix E = A.exp();
  if (!E.allFinite())
    throw NumericalError("matrix exponential failed, |A|_1 = " +
                         std::to_string(A.cwiseAbs().colwise().sum().maxCoeff()));
  return E;
}

}  // namespace

std::vector<cd> signal_matrix(const OperatorMatrices& mat, const CMatrix& B, double g_bar,
                              const std::vector<double>& t_bars) {
  CMatrix Mp = cd(0.0, g_bar) * B;
  Mp.diagonal() += mat.lambda.cast<cd>();
  CMatrix Mm = cd(0.0, -g_bar) * B;
  Mm.diagonal() += mat.lambda.cast<cd>();
  std::vector<cd> out;
  for (double t : t_bars) {
    if (t < 0) throw DomainError("signal_matrix: negative time");
    const CMatrix Ep = expm_checked(-t * Mp);
    const CMatrix Em = expm_checked(-t * Mm);
    out.push_back(Ep.row(0).transpose().cwiseProduct(Em.col(0)).sum());
  }
  return out;
}

cd signal_matrix(const OperatorMatrices& mat, const CMatrix& B, double g_bar, double t_bar) {
  return signal_matrix(mat, B, g_bar, std::vector<double>{t_bar}).front();
}

SignalCoefficients compute_coefficients(const Spectrum& plus, const OperatorMatrices& mat) {
  (void)mat;
  SignalCoefficients c;
  const Eigen::Index N = plus.size();
  c.mu.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) c.mu[j] = plus.X(j, 0);
  c.Gamma = plus.X.conjugate() * plus.X.transpose();
  c.C.resize(N, N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index k = 0; k < N; ++k) c.C(j, k) = std::conj(c.mu[j]) * c.Gamma(j, k) * c.mu[k];
  return c;
}

SignalCoefficients compute_coefficients(const Spectrum& plus, const Spectrum& minus,
                                        const OperatorMatrices& mat) {
  SignalCoefficients c;
  const Eigen::Index N = plus.size();
  c.mu.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) c.mu[j] = plus.X(j, 0);
  CMatrix Y(N, N);
  for (Eigen::Index k = 0; k < N; ++k) Y.col(k) = mat.w_sign[k] * plus.X.col(mat.w_partner[k]);
  c.Gamma = minus.X * Y.transpose();
  c.C.resize(N, N);
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index k = 0; k < N; ++k) c.C(j, k) = minus.X(j, 0) * c.Gamma(j, k) * c.mu[k];
  return c;
}

cd signal_spectral(const Spectrum& plus, const Spectrum& minus, const SignalCoefficients& c,
                   double t_bar, double re_cutoff) {
  const Eigen::Index N = plus.size();
  CVector a(N), b(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const bool keep = plus.eigenvalues[j].real() <= re_cutoff;
    a[j] = keep ? std::exp(-t_bar * minus.eigenvalues[j]) : 0.0;
    b[j] = keep ? std::exp(-t_bar * plus.eigenvalues[j]) : 0.0;
  }
  return kernels::active().bilinear(static_cast<std::size_t>(N), a.data(), c.C.data(), b.data());
}

double signal_one_mode(double lambda1, double C11, double t_bar) {
  return C11 * std::exp(-2.0 * t_bar * lambda1);
}

double signal_two_mode(cd lambda1, double C11, cd C12, double t_bar) {
  return 2.0 * std::exp(-2.0 * t_bar * lambda1.real()) *
         (C11 + (C12 * std::exp(cd(0.0, 2.0 * t_bar * lambda1.imag()))).real());
}

LowModes low_modes(const Spectrum& s) {
  const Eigen::Index N = s.size();
  std::vector<int> idx(N);
  for (Eigen::Index i = 0; i < N; ++i) idx[i] = static_cast<int>(i);
  std::partial_sort(idx.begin(), idx.begin() + std::min<Eigen::Index>(2, N), idx.end(), [&](int a, int b) {
    const cd x = s.eigenvalues[a], y = s.eigenvalues[b];
    if (std::abs(x.real() - y.real()) > 1e-9 * std::max(1.0, std::abs(x.real())))
      return x.real() < y.real();
    return x.imag() > y.imag();
  });
  LowModes m;
  m.first = idx[0];
  m.second = N > 1 ? idx[1] : idx[0];
  m.complex_pair = std::abs(s.eigenvalues[m.first].imag()) > 1e-9 &&
                   std::abs(s.eigenvalues[m.first] - std::conj(s.eigenvalues[m.second])) <
                       1e-6 * std::max(1.0, std::abs(s.eigenvalues[m.first]));
  return m;
}

double lambda1_asymptotic(double g_bar, double R) {
  const double a = std::abs(specfun::kAiryPrimeZero1);
  const double g = g_bar / (R * R * R);
  const double l = std::pow(g, -1.0 / 3.0);
  return a / (2.0 * l * l) + 1.0 / (std::sqrt(R) * std::pow(l, 1.5)) -
         std::sqrt(3.0) / (4.0 * a * R * l);
}

}  // namespace btspec
