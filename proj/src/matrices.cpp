// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/matrices.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <tuple>

namespace btspec {

namespace {

double checked_den(double a, double a2) {
  const double d = (a * a - a2 * a2) * (a * a - a2 * a2);
  if (std::abs(d) < kMinDenominator)
    throw NumericalError("matrix element denominator below 1e-12 for alpha " +
                         std::to_string(a) + ", " + std::to_string(a2));
  return d;
}

OperatorMatrices init(const BasisSet& basis) {
  OperatorMatrices m;
  m.basis = basis;
  const Eigen::Index N = static_cast<Eigen::Index>(basis.size());
  m.lambda = Eigen::Map<const RVector>(basis.eigenvalue.data(), N);
  m.Bx = CMatrix::Zero(N, N);
  m.By = CMatrix::Zero(N, N);
  m.Bz = CMatrix::Zero(N, N);
  m.W = CMatrix::Identity(N, N);
  m.w_partner.resize(N);
  m.w_sign.assign(N, 1.0);
  for (Eigen::Index i = 0; i < N; ++i) m.w_partner[i] = static_cast<int>(i);
  return m;
}

void check_geometry(const BasisSet& b, Geometry g) {
  if (b.geometry != g) throw DomainError("assemble: basis geometry is " + geometry_name(b.geometry));
}

// Disk-plane blocks indexed by (n,k,l) rows of an arbitrary basis.
double disk_x(const BasisIndex& a, double aa, const BasisIndex& b, double ab) {
  if (std::abs(a.n - b.n) != 1 || a.l != b.l) return 0.0;
  const double v = disk_element(a.n, aa, b.n, ab);
  if (a.l == 2 && a.n + b.n == 1) return 0.0;
  return v;
}

double disk_y(const BasisIndex& a, double aa, const BasisIndex& b, double ab) {
  if (std::abs(a.n - b.n) != 1 || a.l == b.l) return 0.0;
  const double v = disk_element(a.n, aa, b.n, ab);
  const bool kron = a.n + b.n == 1;
  if (a.l == 1) return b.n == a.n + 1 ? v : (kron ? 0.0 : -v);
  return b.n == a.n - 1 ? v : (kron ? 0.0 : -v);
}

}  // namespace

CMatrix OperatorMatrices::Lambda() const { return lambda.cast<cd>().asDiagonal(); }

double sphere_beta(int n, double alpha) {
  if (n == 0 && alpha == 0.0) return std::sqrt(1.5);
  return std::sqrt((2.0 * n + 1.0) * alpha * alpha / (alpha * alpha - n * (n + 1.0)));
}

double sphere_reduced_element(int n, double a, int n2, double a2) {
  if (std::abs(n - n2) != 1) return 0.0;
  const double num = a * a + a2 * a2 - n * (n2 + 1.0) - n2 * (n + 1.0) + 1.0;
  return (n + n2 + 1.0) / ((2.0 * n + 1.0) * (2.0 * n2 + 1.0)) * sphere_beta(n, a) *
         sphere_beta(n2, a2) * num / checked_den(a, a2);
}

double disk_beta(int n, double alpha) {
  if (n == 0 && alpha == 0.0) return 1.0;
  return alpha / std::sqrt(alpha * alpha - double(n) * n);
}

double disk_element(int n, double a, int n2, double a2) {
  if (std::abs(n - n2) != 1) return 0.0;
  const double f = std::sqrt(1.0 + (n == 0) + (n2 == 0));
  return f * disk_beta(n, a) * disk_beta(n2, a2) * (a * a + a2 * a2 - 2.0 * n * n2) /
         checked_den(a, a2);
}

double interval_element(int m, int m2) {
  if (m == m2) return 0.0;
  const double sgn = ((m + m2) % 2 == 0) ? 1.0 : -1.0;
  const double den = kPi * kPi * double(m * m - m2 * m2) * double(m * m - m2 * m2);
  return (sgn - 1.0) * std::sqrt(2.0 - (m == 0)) * std::sqrt(2.0 - (m2 == 0)) *
         (double(m) * m + double(m2) * m2) / den;
}

OperatorMatrices assemble_sphere(const BasisSet& basis) {
  check_geometry(basis, Geometry::Sphere);
  OperatorMatrices M = init(basis);
  const auto& ix = basis.index;
  const Eigen::Index N = M.size();
  std::map<std::tuple<int, int, int>, int> pos;
  for (Eigen::Index i = 0; i < N; ++i) pos[{ix[i].n, ix[i].k, ix[i].m}] = static_cast<int>(i);
  const cd I(0.0, 1.0);
  for (Eigen::Index a = 0; a < N; ++a) {
    const int n = ix[a].n, m = ix[a].m;
    auto it = pos.find({n, ix[a].k, -m});
    if (it == pos.end()) throw NumericalError("sphere basis split a degeneracy class");
    M.w_partner[a] = it->second;
    M.w_sign[a] = (m % 2 == 0) ? 1.0 : -1.0;
    for (Eigen::Index b = 0; b < N; ++b) {
      const int n2 = ix[b].n, m2 = ix[b].m;
      if (std::abs(n - n2) != 1) continue;
      const double B = sphere_reduced_element(n, basis.alpha[a], n2, basis.alpha[b]);
      if (n2 == n + 1) {
        if (m2 == m) M.Bz(a, b) = B * std::sqrt(1.0 - double(m * m) / double((n + 1) * (n + 1)));
        const double lo = std::sqrt(double(n - m + 1) * (n - m + 2)) / (n + 1);
        const double hi = std::sqrt(double(n + m + 1) * (n + m + 2)) / (n + 1);
        if (m2 == m - 1) {
          M.Bx(a, b) = 0.5 * B * lo;
          M.By(a, b) = I * 0.5 * B * lo;
        } else if (m2 == m + 1) {
          M.Bx(a, b) = -0.5 * B * hi;
          M.By(a, b) = I * 0.5 * B * hi;
        }
      } else {
        if (m2 == m) M.Bz(a, b) = B * std::sqrt(1.0 - double(m * m) / double(n * n));
        const double lo = std::sqrt(double(n + m - 1) * (n + m)) / n;
        const double hi = std::sqrt(double(n - m - 1) * (n - m)) / n;
        if (m2 == m - 1) {
          M.Bx(a, b) = -0.5 * B * lo;
          M.By(a, b) = -I * 0.5 * B * lo;
        } else if (m2 == m + 1) {
          M.Bx(a, b) = 0.5 * B * hi;
          M.By(a, b) = -I * 0.5 * B * hi;
        }
      }
    }
  }
  M.W.setZero();
  for (Eigen::Index a = 0; a < N; ++a) M.W(a, M.w_partner[a]) = M.w_sign[a];
  return M;
}

OperatorMatrices assemble_reduced_sphere(const BasisSet& basis) {
  check_geometry(basis, Geometry::ReducedSphere);
  OperatorMatrices M = init(basis);
  const Eigen::Index N = M.size();
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b)
      M.Bz(a, b) = sphere_reduced_element(basis.index[a].n, basis.alpha[a], basis.index[b].n,
                                          basis.alpha[b]);
  return M;
}

OperatorMatrices assemble_disk(const BasisSet& basis) {
  check_geometry(basis, Geometry::Disk);
  OperatorMatrices M = init(basis);
  const Eigen::Index N = M.size();
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) {
      M.Bx(a, b) = disk_x(basis.index[a], basis.alpha[a], basis.index[b], basis.alpha[b]);
      M.By(a, b) = disk_y(basis.index[a], basis.alpha[a], basis.index[b], basis.alpha[b]);
    }
  return M;
}

OperatorMatrices assemble_interval(const BasisSet& basis) {
  check_geometry(basis, Geometry::Interval);
  OperatorMatrices M = init(basis);
  const Eigen::Index N = M.size();
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b)
      M.Bz(a, b) = basis.H * interval_element(basis.index[a].m, basis.index[b].m);
  return M;
}

OperatorMatrices assemble_cylinder(const BasisSet& basis) {
  check_geometry(basis, Geometry::Cylinder);
  OperatorMatrices M = init(basis);
  const Eigen::Index N = M.size();
  const double aspect = basis.aspect();
  const auto& ix = basis.index;
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) {
      if (ix[a].m == ix[b].m) {
        M.Bx(a, b) = disk_x(ix[a], basis.alpha[a], ix[b], basis.alpha[b]);
        M.By(a, b) = disk_y(ix[a], basis.alpha[a], ix[b], basis.alpha[b]);
      }
      if (ix[a].n == ix[b].n && ix[a].k == ix[b].k && ix[a].l == ix[b].l)
        M.Bz(a, b) = aspect * interval_element(ix[a].m, ix[b].m);
    }
  return M;
}

OperatorMatrices assemble(const BasisSet& basis) {
  switch (basis.geometry) {
    case Geometry::Sphere: return assemble_sphere(basis);
    case Geometry::ReducedSphere: return assemble_reduced_sphere(basis);
    case Geometry::Disk: return assemble_disk(basis);
    case Geometry::Interval: return assemble_interval(basis);
    case Geometry::Cylinder: return assemble_cylinder(basis);
  }
  throw DomainError("assemble: unknown geometry");
}

CMatrix gradient_matrix(const OperatorMatrices& mat, const std::array<double, 3>& d) {
  const Geometry g = mat.basis.geometry;
  const double eps = 1e-15;
  if ((g == Geometry::ReducedSphere || g == Geometry::Interval) &&
      (std::abs(d[0]) > eps || std::abs(d[1]) > eps))
    throw DomainError(geometry_name(g) + " supports only a z-directed gradient");
  if (g == Geometry::Disk && std::abs(d[2]) > eps)
    throw DomainError("disk supports only an in-plane gradient");
  CMatrix B = CMatrix::Zero(mat.size(), mat.size());
  if (d[0] != 0.0) B += d[0] * mat.Bx;
  if (d[1] != 0.0) B += d[1] * mat.By;
  if (d[2] != 0.0) B += d[2] * mat.Bz;
  return B;
}

CMatrix gradient_matrix_sphere(const OperatorMatrices& mat, double theta, double phi) {
  if (theta == 0.0) return mat.Bz;
  return gradient_matrix(mat, {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                               std::cos(theta)});
}

CMatrix gradient_matrix_cylinder(const OperatorMatrices& mat, double eta) {
  if (eta == 0.0) return mat.Bx;
  return gradient_matrix(mat, {std::cos(eta), 0.0, std::sin(eta)});
}

void write_matrices(const std::string& path, const OperatorMatrices& mat) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open " + path);
  const std::uint32_t g = static_cast<std::uint32_t>(mat.basis.geometry);
  const std::uint64_t N = static_cast<std::uint64_t>(mat.size());
  f.write(reinterpret_cast<const char*>(&g), sizeof g);
  f.write(reinterpret_cast<const char*>(&N), sizeof N);
  f.write(reinterpret_cast<const char*>(&mat.basis.R), sizeof(double));
  f.write(reinterpret_cast<const char*>(&mat.basis.H), sizeof(double));
  const CMatrix L = mat.Lambda();
  for (const CMatrix* m : {&L, &mat.Bx, &mat.By, &mat.Bz, &mat.W}) {
    using RowMajor = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const RowMajor r = *m;
    f.write(reinterpret_cast<const char*>(r.data()),
            static_cast<std::streamsize>(sizeof(cd) * r.size()));
  }
  if (!f) throw NumericalError("write failed: " + path);
}

MatrixDump read_matrices(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open " + path);
  MatrixDump d{};
  std::uint32_t g = 0;
  f.read(reinterpret_cast<char*>(&g), sizeof g);
  f.read(reinterpret_cast<char*>(&d.N), sizeof d.N);
  f.read(reinterpret_cast<char*>(&d.R), sizeof d.R);
  f.read(reinterpret_cast<char*>(&d.H), sizeof d.H);
  d.geometry = static_cast<Geometry>(g);
  const Eigen::Index N = static_cast<Eigen::Index>(d.N);
  for (auto& m : d.mats) {
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r(N, N);
    f.read(reinterpret_cast<char*>(r.data()), static_cast<std::streamsize>(sizeof(cd) * r.size()));
    m = r;
  }
  if (!f) throw NumericalError("truncated matrix dump: " + path);
  return d;
}

}  // namespace btspec
