// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/fieldmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <boost/math/special_functions/spherical_harmonic.hpp>

#include "btspec/specfun.hpp"

namespace btspec {

namespace {

double sphere_radial(int n, double a, double r) {
  if (a == 0.0) return std::sqrt(3.0);
  return std::sqrt(2.0 * a * a / (a * a - n * (n + 1.0))) * specfun::sph_bessel_j(n, a * r) /
         specfun::sph_bessel_j(n, a);
}

double disk_radial(int n, double a, double r) {
  if (a == 0.0) return 1.0 / std::sqrt(kPi);
  const double beta = a / std::sqrt(a * a - double(n) * n);
  return std::sqrt(2.0 - (n == 0)) / std::sqrt(kPi) * beta * specfun::bessel_j(n, a * r) /
         specfun::bessel_j(n, a);
}

double interval_mode(int m, double H, double z) {
  return std::sqrt(2.0 - (m == 0)) / std::sqrt(H) * std::cos(kPi * m * (z + 0.5 * H) / H);
}

}  // namespace

bool inside(const BasisSet& b, const Point3& p, double slack) {
  const double x = p[0], y = p[1], z = p[2];
  switch (b.geometry) {
    case Geometry::Sphere:
    case Geometry::ReducedSphere:
      return x * x + y * y + z * z <= 1.0 + slack;
    case Geometry::Disk:
      return x * x + y * y <= 1.0 + slack;
    case Geometry::Interval:
      return std::abs(z) <= 0.5 * b.aspect() + slack;
    case Geometry::Cylinder:
      return x * x + y * y <= 1.0 + slack && std::abs(z) <= 0.5 * b.aspect() + slack;
  }
  return false;
}

CVector eval_basis(const BasisSet& b, const Point3& p) {
  const Eigen::Index N = static_cast<Eigen::Index>(b.size());
  CVector u(N);
  const double x = p[0], y = p[1], z = p[2];
  const double rho = std::hypot(x, y);
  const double phi = std::atan2(y, x);
  std::map<std::pair<int, int>, double> radial;
  auto rad = [&](int n, int k, double a, double r, bool sph) {
    auto key = std::make_pair(n, k);
    auto it = radial.find(key);
    if (it != radial.end()) return it->second;
    const double v = sph ? sphere_radial(n, a, r) : disk_radial(n, a, r);
    radial[key] = v;
    return v;
  };
  switch (b.geometry) {
    case Geometry::Sphere:
    case Geometry::ReducedSphere: {
      const double r = std::sqrt(x * x + y * y + z * z);
      const double theta = r > 0 ? std::acos(std::clamp(z / r, -1.0, 1.0)) : 0.0;
      std::map<std::pair<int, int>, cd> ylm;
      for (Eigen::Index k = 0; k < N; ++k) {
        const BasisIndex& ix = b.index[k];
        const auto key = std::make_pair(ix.n, ix.m);
        auto it = ylm.find(key);
        if (it == ylm.end())
          it = ylm.emplace(key, boost::math::spherical_harmonic(ix.n, ix.m, theta, phi)).first;
        u[k] = rad(ix.n, ix.k, b.alpha[k], r, true) * it->second;
      }
      break;
    }
    case Geometry::Disk:
    case Geometry::Cylinder: {
      for (Eigen::Index k = 0; k < N; ++k) {
        const BasisIndex& ix = b.index[k];
        const double ang = ix.l == 1 ? std::cos(ix.n * phi) : std::sin(ix.n * phi);
        double v = rad(ix.n, ix.k, b.alpha[k], rho, false) * ang;
        if (b.geometry == Geometry::Cylinder) v *= interval_mode(ix.m, b.aspect(), z);
        u[k] = v;
      }
      break;
    }
    case Geometry::Interval:
      for (Eigen::Index k = 0; k < N; ++k) u[k] = interval_mode(b.index[k].m, b.aspect(), z);
      break;
  }
  return u;
}

std::vector<cd> eval_eigenfunction(const CVector& row, const BasisSet& basis,
                                   const std::vector<Point3>& points) {
  std::vector<cd> out;
  out.reserve(points.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const Point3& p : points) {
    if (!inside(basis, p)) {
      out.emplace_back(nan, nan);
      continue;
    }
    out.push_back(row.transpose() * eval_basis(basis, p));
  }
  return out;
}

FieldGrid export_projection(const CVector& row, const BasisSet& basis, int j, double g, int nx,
                            int nz) {
  if (nx < 1 || nz < 1) throw DomainError("field grid resolution must be >= 1");
  if (basis.geometry == Geometry::Disk || basis.geometry == Geometry::Interval)
    throw DomainError("xz projection needs a three-dimensional geometry");
  FieldGrid f;
  f.j = j;
  f.g = g;
  f.nx = nx;
  f.nz = nz;
  const double zh = basis.geometry == Geometry::Cylinder ? 0.5 * basis.aspect() : 1.0;
  auto coord = [](int i, int n, double h) { return n == 1 ? 0.0 : -h + 2.0 * h * i / (n - 1); };
  std::vector<Point3> pts;
  for (int iz = 0; iz < nz; ++iz)
    for (int ix = 0; ix < nx; ++ix) {
      f.x.push_back(coord(ix, nx, 1.0));
      f.z.push_back(coord(iz, nz, zh));
      pts.push_back({f.x.back(), 0.0, f.z.back()});
    }
  f.values = eval_eigenfunction(row, basis, pts);
  for (const Point3& p : pts) f.inside_mask.push_back(inside(basis, p) ? 1 : 0);
  return f;
}

}  // namespace btspec
