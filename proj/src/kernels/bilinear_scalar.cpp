// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/kernels.hpp"

#include <vector>

namespace btspec::kernels {

std::complex<double> bilinear_scalar(std::size_t n, const std::complex<double>* a,
                                     const std::complex<double>* C,
                                     const std::complex<double>* b) {
  std::vector<std::complex<double>> t(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> bj = b[j];
    if (bj == 0.0) continue;
    const std::complex<double>* col = C + j * n;
    for (std::size_t i = 0; i < n; ++i) t[i] += col[i] * bj;
  }
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * t[i];
  return s;
}

}  // namespace btspec::kernels
