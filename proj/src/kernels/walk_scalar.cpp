// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "btspec/kernels.hpp"

namespace btspec::kernels {

void walk_scalar(std::size_t n, double* x, double* y, double* z, double* phase, const double* dx,
                 const double* dy, const double* dz, const WalkGeometry& geo, const double* e,
                 double coef) {
  const double R2 = geo.R * geo.R, twoR = 2.0 * geo.R;
  const double h = geo.half_height, twoh = 2.0 * geo.half_height;
  for (std::size_t i = 0; i < n; ++i) {
    const double p0 = (e[0] * x[i] + e[1] * y[i]) + e[2] * z[i];
    double px = x[i] + dx[i], py = y[i] + dy[i], pz = z[i] + dz[i];
    for (int pass = 0; pass < 2; ++pass) {
      if (geo.domain == Domain::Sphere) {
        const double r2 = (px * px + py * py) + pz * pz;
        if (r2 > R2) {
          const double r = std::sqrt(r2);
          const double s = (twoR - r) / r;
          px *= s;
          py *= s;
          pz *= s;
        }
      } else if (geo.domain == Domain::Cylinder) {
        const double r2 = px * px + py * py;
        if (r2 > R2) {
          const double r = std::sqrt(r2);
          const double s = (twoR - r) / r;
          px *= s;
          py *= s;
        }
        if (pz > h) pz = twoh - pz;
        if (pz < -h) pz = -twoh - pz;
      }
    }
    const double p1 = (e[0] * px + e[1] * py) + e[2] * pz;
    phase[i] += coef * (p0 + p1);
    x[i] = px;
    y[i] = py;
    z[i] = pz;
  }
}

}  // namespace btspec::kernels
