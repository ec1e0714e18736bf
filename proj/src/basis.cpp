// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/basis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "btspec/common.hpp"
#include "btspec/specfun.hpp"

namespace btspec {

namespace {

struct Mode {
  BasisIndex idx;
  double lambda;
  double alpha;
};

using Generator = std::vector<Mode> (*)(double limit, double aspect);

// (n, k, alpha) families with alpha^2 <= limit; includes the constant family.
std::vector<std::tuple<int, int, double>> radial_families(bool spherical, double limit) {
  std::vector<std::tuple<int, int, double>> out;
  out.emplace_back(0, 0, 0.0);
  const double amax = std::sqrt(limit);
  for (int n = 0; n <= static_cast<int>(amax) + 1; ++n) {
    const auto zt = spherical ? specfun::zeros_dj_spherical_below(n, amax)
                              : specfun::zeros_dJ_below(n, amax);
    const int k0 = n == 0 ? 1 : 0;
    for (std::size_t i = 0; i < zt.zeros.size(); ++i)
      out.emplace_back(n, k0 + static_cast<int>(i), zt.zeros[i]);
  }
  return out;
}

std::vector<Mode> gen_sphere(double limit, double) {
  std::vector<Mode> v;
  for (auto [n, k, a] : radial_families(true, limit))
    for (int m = -n; m <= n; ++m) v.push_back({{n, k, m, 1}, a * a, a});
  return v;
}

std::vector<Mode> gen_reduced(double limit, double) {
  std::vector<Mode> v;
  for (auto [n, k, a] : radial_families(true, limit)) v.push_back({{n, k, 0, 1}, a * a, a});
  return v;
}

std::vector<Mode> gen_disk(double limit, double) {
  std::vector<Mode> v;
  for (auto [n, k, a] : radial_families(false, limit)) {
    v.push_back({{n, k, 0, 1}, a * a, a});
    if (n > 0) v.push_back({{n, k, 0, 2}, a * a, a});
  }
  return v;
}

std::vector<Mode> gen_interval(double limit, double aspect) {
  std::vector<Mode> v;
  for (int m = 0;; ++m) {
    const double lam = kPi * kPi * m * m / (aspect * aspect);
    if (lam > limit) break;
    v.push_back({{0, 0, m, 1}, lam, 0.0});
  }
  return v;
}

std::vector<Mode> gen_cylinder(double limit, double aspect) {
  std::vector<Mode> v;
  const auto disk = gen_disk(limit, aspect);
  for (const auto& d : disk)
    for (int m = 0;; ++m) {
      const double lam = d.lambda + kPi * kPi * m * m / (aspect * aspect);
      if (lam > limit) break;
      BasisIndex idx = d.idx;
      idx.m = m;
      v.push_back({idx, lam, d.alpha});
    }
  return v;
}

bool same_eigenvalue(double a, double b) {
  return std::abs(a - b) <= kBasisDegeneracyTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

auto tie_key(Geometry g, const BasisIndex& i) {
  if (g == Geometry::Sphere) return std::make_tuple(i.n, i.k, m_rank(i.m), 0);
  if (g == Geometry::Interval) return std::make_tuple(i.m, 0, 0, 0);
  return std::make_tuple(i.n, i.k, i.l, i.m);
}

auto family_key(Geometry g, const BasisIndex& i) {
  if (g == Geometry::Cylinder) return std::make_tuple(i.n, i.k, i.m);
  if (g == Geometry::Interval) return std::make_tuple(0, 0, i.m);
  return std::make_tuple(i.n, i.k, 0);
}

BasisSet build(Geometry geom, int N, double R, double H, Generator gen) {
  if (N < 1) throw DomainError("basis size must be >= 1");
  if (!(R > 0) || !(H > 0)) throw DomainError("basis lengths must be positive");
  const double aspect = H / R;
  double limit = 16.0;
  std::vector<Mode> modes;
  for (;;) {
    modes = gen(limit, aspect);
    std::sort(modes.begin(), modes.end(),
              [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });
    if (static_cast<int>(modes.size()) > N &&
        modes[N - 1].lambda * (1.0 + 1e-6) + 1e-6 < limit)
      break;
    limit *= 2.0;
    if (limit > 1e9) throw NumericalError("basis enumeration did not terminate");
  }
  // Group ties and order each group by the index convention.
  std::size_t s = 0;
  while (s < modes.size()) {
    std::size_t e = s + 1;
    while (e < modes.size() && same_eigenvalue(modes[e].lambda, modes[s].lambda)) ++e;
    std::sort(modes.begin() + s, modes.begin() + e, [geom](const Mode& a, const Mode& b) {
      return tie_key(geom, a.idx) < tie_key(geom, b.idx);
    });
    s = e;
  }
  std::size_t n = static_cast<std::size_t>(N);
  while (n < modes.size() && same_eigenvalue(modes[n].lambda, modes[n - 1].lambda)) ++n;

  BasisSet b;
  b.geometry = geom;
  b.R = R;
  b.H = H;
  int cls = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const Mode& md = modes[i];
    if (i == 0 || !same_eigenvalue(md.lambda, b.eigenvalue.back())) {
      ++cls;
      b.accidental_class.push_back(false);
    } else if (family_key(geom, md.idx) != family_key(geom, b.index.back())) {
      b.accidental_class[cls] = true;
    }
    b.index.push_back(md.idx);
    b.eigenvalue.push_back(md.lambda);
    b.alpha.push_back(md.alpha);
    b.degeneracy_class.push_back(cls);
  }
  return b;
}

}  // namespace

int m_rank(int m) { return m == 0 ? 0 : (m < 0 ? 2 * (-m) - 1 : 2 * m); }

std::string geometry_name(Geometry g) {
  switch (g) {
    case Geometry::Sphere: return "sphere";
    case Geometry::ReducedSphere: return "reduced_sphere";
    case Geometry::Disk: return "disk";
    case Geometry::Interval: return "interval";
    case Geometry::Cylinder: return "cylinder";
  }
  return "?";
}

Geometry geometry_from_name(const std::string& s) {
  for (Geometry g : {Geometry::Sphere, Geometry::ReducedSphere, Geometry::Disk,
                     Geometry::Interval, Geometry::Cylinder})
    if (geometry_name(g) == s) return g;
  throw ConfigError("unknown geometry '" + s + "'");
}

std::string BasisSet::label(std::size_t i) const {
  const BasisIndex& x = index.at(i);
  switch (geometry) {
    case Geometry::Sphere:
      return std::to_string(x.n) + std::to_string(x.k) +
             (x.m < 0 ? "(" + std::to_string(x.m) + ")" : std::to_string(x.m));
    case Geometry::ReducedSphere:
      return std::to_string(x.n) + std::to_string(x.k);
    case Geometry::Disk:
      return std::to_string(x.n) + std::to_string(x.k) + std::to_string(x.l);
    case Geometry::Interval:
      return std::to_string(x.m);
    case Geometry::Cylinder:
      return std::to_string(x.n) + std::to_string(x.k) + std::to_string(x.l) + std::to_string(x.m);
  }
  return {};
}

BasisSet build_sphere_basis(int N) { return build(Geometry::Sphere, N, 1.0, 1.0, gen_sphere); }
BasisSet build_reduced_sphere_basis(int N) {
  return build(Geometry::ReducedSphere, N, 1.0, 1.0, gen_reduced);
}
BasisSet build_disk_basis(int N) { return build(Geometry::Disk, N, 1.0, 1.0, gen_disk); }
BasisSet build_interval_basis(int N, double H) {
  return build(Geometry::Interval, N, 1.0, H, gen_interval);
}
BasisSet build_cylinder_basis(int N, double R, double H) {
  return build(Geometry::Cylinder, N, R, H, gen_cylinder);
}

BasisSet build_basis(Geometry g, int N, double R, double H) {
  switch (g) {
    case Geometry::Sphere: return build_sphere_basis(N);
    case Geometry::ReducedSphere: return build_reduced_sphere_basis(N);
    case Geometry::Disk: return build_disk_basis(N);
    case Geometry::Interval: return build_interval_basis(N, H / R);
    case Geometry::Cylinder: return build_cylinder_basis(N, R, H);
  }
  throw DomainError("unknown geometry");
}

}  // namespace btspec
