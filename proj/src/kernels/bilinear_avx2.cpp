// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <immintrin.h>

#include <vector>

#include "btspec/kernels.hpp"

namespace btspec::kernels {

namespace {

// Two interleaved complex products c * (br + i bi).
inline __m256d cmul(__m256d c, __m256d br, __m256d bi) {
  const __m256d sw = _mm256_permute_pd(c, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(c, br), _mm256_mul_pd(sw, bi));
}

}  // namespace

std::complex<double> bilinear_avx2(std::size_t n, const std::complex<double>* a,
                                   const std::complex<double>* C, const std::complex<double>* b) {
  std::vector<std::complex<double>> t(n, 0.0);
  double* tp = reinterpret_cast<double*>(t.data());
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> bj = b[j];
    if (bj == 0.0) continue;
    const double* col = reinterpret_cast<const double*>(C + j * n);
    const __m256d br = _mm256_set1_pd(bj.real()), bi = _mm256_set1_pd(bj.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      const __m256d c = _mm256_loadu_pd(col + 2 * i);
      _mm256_storeu_pd(tp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(tp + 2 * i), cmul(c, br, bi)));
    }
    for (; i < n; ++i) t[i] += C[j * n + i] * bj;
  }
  const double* ap = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ap + 2 * i);
    const __m256d tv = _mm256_loadu_pd(tp + 2 * i);
    const __m256d tr = _mm256_movedup_pd(tv);
    const __m256d ti = _mm256_permute_pd(tv, 0xF);
    acc = _mm256_add_pd(acc, cmul(av, tr, ti));
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  std::complex<double> s(buf[0] + buf[2], buf[1] + buf[3]);
  for (; i < n; ++i) s += a[i] * t[i];
  return s;
}

}  // namespace btspec::kernels
