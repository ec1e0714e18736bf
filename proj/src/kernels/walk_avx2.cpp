// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <immintrin.h>

#include "btspec/kernels.hpp"

namespace btspec::kernels {

namespace {

inline __m256d reflect_radial(__m256d r2, __m256d R2, __m256d twoR, __m256d one) {
  const __m256d out = _mm256_cmp_pd(r2, R2, _CMP_GT_OQ);
  const __m256d r = _mm256_sqrt_pd(r2);
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(twoR, r), r);
  return _mm256_blendv_pd(one, s, out);
}

}  // namespace

void walk_avx2(std::size_t n, double* x, double* y, double* z, double* phase, const double* dx,
               const double* dy, const double* dz, const WalkGeometry& geo, const double* e,
               double coef) {
  const __m256d ex = _mm256_set1_pd(e[0]), ey = _mm256_set1_pd(e[1]), ez = _mm256_set1_pd(e[2]);
  const __m256d R2 = _mm256_set1_pd(geo.R * geo.R), twoR = _mm256_set1_pd(2.0 * geo.R);
  const __m256d h = _mm256_set1_pd(geo.half_height), mh = _mm256_set1_pd(-geo.half_height);
  const __m256d twoh = _mm256_set1_pd(2.0 * geo.half_height);
  const __m256d mtwoh = _mm256_set1_pd(-2.0 * geo.half_height);
  const __m256d one = _mm256_set1_pd(1.0), vc = _mm256_set1_pd(coef);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i), vy = _mm256_loadu_pd(y + i), vz = _mm256_loadu_pd(z + i);
    const __m256d p0 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ex, vx), _mm256_mul_pd(ey, vy)),
                                     _mm256_mul_pd(ez, vz));
    vx = _mm256_add_pd(vx, _mm256_loadu_pd(dx + i));
    vy = _mm256_add_pd(vy, _mm256_loadu_pd(dy + i));
    vz = _mm256_add_pd(vz, _mm256_loadu_pd(dz + i));
    for (int pass = 0; pass < 2; ++pass) {
      if (geo.domain == Domain::Sphere) {
        const __m256d r2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)),
                                         _mm256_mul_pd(vz, vz));
        const __m256d s = reflect_radial(r2, R2, twoR, one);
        vx = _mm256_mul_pd(vx, s);
        vy = _mm256_mul_pd(vy, s);
        vz = _mm256_mul_pd(vz, s);
      } else if (geo.domain == Domain::Cylinder) {
        const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy));
        const __m256d s = reflect_radial(r2, R2, twoR, one);
        vx = _mm256_mul_pd(vx, s);
        vy = _mm256_mul_pd(vy, s);
        vz = _mm256_blendv_pd(vz, _mm256_sub_pd(twoh, vz), _mm256_cmp_pd(vz, h, _CMP_GT_OQ));
        vz = _mm256_blendv_pd(vz, _mm256_sub_pd(mtwoh, vz), _mm256_cmp_pd(vz, mh, _CMP_LT_OQ));
      }
    }
    const __m256d p1 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ex, vx), _mm256_mul_pd(ey, vy)),
                                     _mm256_mul_pd(ez, vz));
    const __m256d ph = _mm256_add_pd(_mm256_loadu_pd(phase + i),
                                     _mm256_mul_pd(vc, _mm256_add_pd(p0, p1)));
    _mm256_storeu_pd(phase + i, ph);
    _mm256_storeu_pd(x + i, vx);
    _mm256_storeu_pd(y + i, vy);
    _mm256_storeu_pd(z + i, vz);
  }
  if (i < n)
    walk_scalar(n - i, x + i, y + i, z + i, phase + i, dx + i, dy + i, dz + i, geo, e, coef);
}

}  // namespace btspec::kernels
