// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/specfun.hpp"

#include <cmath>
#include <functional>
#include <string>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "btspec/common.hpp"

namespace btspec::specfun {

namespace {

bool is_supported_order(double nu) {
  if (std::abs(nu - kMinusTwoThirds) < 1e-14) return true;
  return nu >= 0.0 && nu == std::floor(nu);
}

void check_order(double nu) {
  if (!is_supported_order(nu))
    throw DomainError("bessel_j: unsupported order " + std::to_string(nu));
}

double target_derivative(ZeroKind kind, double order, double z) {
  switch (kind) {
    case ZeroKind::DerivJ: {
      const int n = static_cast<int>(order);
      return -bessel_j_prime(n, z) / z - (1.0 - n * n / (z * z)) * bessel_j(n, z);
    }
    case ZeroKind::DerivSphericalJ: {
      const int n = static_cast<int>(order);
      return -2.0 / z * sph_bessel_j_prime(n, z) -
             (1.0 - n * (n + 1.0) / (z * z)) * sph_bessel_j(n, z);
    }
    case ZeroKind::JMinusTwoThirds:
      return bessel_j_prime(order, z);
  }
  return 0.0;
}

// Scan from z0 in fixed steps, certify sign changes, bisect, polish with Newton.
ZeroTable find_zeros(ZeroKind kind, double order, double z0, int count, double limit) {
  ZeroTable t;
  t.kind = kind;
  t.order = order;
  t.tolerance = 1e-12;
  const double h = 0.05;
  auto f = [&](double z) { return target_value(kind, order, z); };
  double a = z0;
  double fa = f(a);
  if (fa == 0.0) throw NumericalError("zero finder: scan start is a zero");
  const double zmax = limit > 0 ? limit : 1e6;
  while ((count <= 0 || static_cast<int>(t.zeros.size()) < count) && a < zmax) {
    double b = std::min(a + h, zmax);
    double fb = f(b);
    if (fb == 0.0) {
      t.zeros.push_back(b);
      b += 1e-9;
      fb = f(b);
    } else if ((fa < 0) != (fb < 0)) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-13 * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      double z = 0.5 * (lo + hi);
      for (int it = 0; it < 3; ++it) {
        const double d = target_derivative(kind, order, z);
        if (d == 0.0) break;
        const double zn = z - f(z) / d;
        if (!(zn >= a && zn <= b)) break;
        z = zn;
      }
      if (!(std::abs(f(z)) < t.tolerance))
        throw NumericalError("zero finder: bracket did not converge near " + std::to_string(z));
      t.zeros.push_back(z);
    }
    a = b;
    fa = fb;
  }
  if (count > 0 && static_cast<int>(t.zeros.size()) < count)
    throw NumericalError("zero finder: fewer zeros than requested");
  return t;
}

double scan_start(int n) { return n == 0 ? 0.5 : static_cast<double>(n); }

}  // namespace

double bessel_j(double nu, double z) {
  check_order(nu);
  if (z < 0) throw DomainError("bessel_j: negative argument");
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0) return 0.0;
    return HUGE_VAL;
  }
  return boost::math::cyl_bessel_j(nu, z);
}

double bessel_j_prime(double nu, double z) {
  check_order(nu);
  if (z == 0.0 && nu >= 0) return nu == 1.0 ? 0.5 : 0.0;
  return boost::math::cyl_bessel_j_prime(nu, z);
}

double sph_bessel_j(int n, double z) {
  if (n < 0 || z < 0) throw DomainError("sph_bessel_j: bad arguments");
  return boost::math::sph_bessel(static_cast<unsigned>(n), z);
}

double sph_bessel_j_prime(int n, double z) {
  if (n < 0 || z < 0) throw DomainError("sph_bessel_j_prime: bad arguments");
  if (z == 0.0) return n == 1 ? 1.0 / 3.0 : 0.0;
  return boost::math::sph_bessel_prime(static_cast<unsigned>(n), z);
}

double airy_ai_prime(double x) { return boost::math::airy_ai_prime(x); }

double target_value(ZeroKind kind, double order, double z) {
  switch (kind) {
    case ZeroKind::DerivJ:
      return bessel_j_prime(order, z);
    case ZeroKind::DerivSphericalJ:
      return sph_bessel_j_prime(static_cast<int>(order), z);
    case ZeroKind::JMinusTwoThirds:
      return bessel_j(kMinusTwoThirds, z);
  }
  return 0.0;
}

ZeroTable zeros_dJ(int n, int count) {
  if (n < 0 || count < 1) throw DomainError("zeros_dJ: bad arguments");
  return find_zeros(ZeroKind::DerivJ, n, scan_start(n), count, 0.0);
}

ZeroTable zeros_dj_spherical(int n, int count) {
  if (n < 0 || count < 1) throw DomainError("zeros_dj_spherical: bad arguments");
  return find_zeros(ZeroKind::DerivSphericalJ, n, scan_start(n), count, 0.0);
}

ZeroTable zeros_dJ_below(int n, double limit) {
  if (n < 0) throw DomainError("zeros_dJ_below: bad order");
  if (limit <= scan_start(n)) return ZeroTable{ZeroKind::DerivJ, double(n), {}, 1e-12};
  return find_zeros(ZeroKind::DerivJ, n, scan_start(n), 0, limit);
}

ZeroTable zeros_dj_spherical_below(int n, double limit) {
  if (n < 0) throw DomainError("zeros_dj_spherical_below: bad order");
  if (limit <= scan_start(n)) return ZeroTable{ZeroKind::DerivSphericalJ, double(n), {}, 1e-12};
  return find_zeros(ZeroKind::DerivSphericalJ, n, scan_start(n), 0, limit);
}

std::vector<double> interval_branch_constants(int count) {
  if (count < 1) throw DomainError("interval_branch_constants: count < 1");
  return find_zeros(ZeroKind::JMinusTwoThirds, kMinusTwoThirds, 0.1, count, 0.0).zeros;
}

double mcmahon_dJ(int n, int k) {
  const int kk = n == 0 ? k + 1 : k;
  const double b = (kk + 0.5 * n - 0.75) * kPi;
  const double mu = 4.0 * n * n;
  const double e = 8.0 * b;
  return b - (mu + 3.0) / e - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * e * e * e);
}

double mcmahon_dj_spherical(int n, int k) {
  const int kk = n == 0 ? k + 1 : k;
  const double b = (kk + 0.5 * n - 0.5) * kPi;
  const double mu = (2.0 * n + 1.0) * (2.0 * n + 1.0);
  return b - (mu + 7.0) / (8.0 * b);
}

}  // namespace btspec::specfun
