// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>

namespace btspec::kernels {

enum class Domain { Free = 0, Sphere = 1, Cylinder = 2 };

struct WalkGeometry {
  Domain domain = Domain::Sphere;
  double R = 1.0;
  double half_height = 0.5;
};

// Advance n walkers by the given increments, reflect specularly into the domain and
// accumulate phase += coef * (e.x_old + e.x_new).
using WalkFn = void (*)(std::size_t n, double* x, double* y, double* z, double* phase,
                        const double* dx, const double* dy, const double* dz,
                        const WalkGeometry& geo, const double* e, double coef);

// a^T C b with C column-major n x n.
using BilinearFn = std::complex<double> (*)(std::size_t n, const std::complex<double>* a,
                                            const std::complex<double>* C,
                                            const std::complex<double>* b);

struct Table {
  WalkFn walk;
  BilinearFn bilinear;
  const char* name;
};

void walk_scalar(std::size_t n, double* x, double* y, double* z, double* phase, const double* dx,
                 const double* dy, const double* dz, const WalkGeometry& geo, const double* e,
                 double coef);
void walk_avx2(std::size_t n, double* x, double* y, double* z, double* phase, const double* dx,
               const double* dy, const double* dz, const WalkGeometry& geo, const double* e,
               double coef);
std::complex<double> bilinear_scalar(std::size_t n, const std::complex<double>* a,
                                     const std::complex<double>* C,
                                     const std::complex<double>* b);
std::complex<double> bilinear_avx2(std::size_t n, const std::complex<double>* a,
                                   const std::complex<double>* C, const std::complex<double>* b);

const Table& scalar();
const Table& avx2();
bool avx2_supported();
// AVX2 when the CPU has it, unless BTSPEC_SIMD=scalar.
const Table& active();

}  // namespace btspec::kernels
