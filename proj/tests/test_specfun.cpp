// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "btspec/common.hpp"
#include "btspec/specfun.hpp"

using namespace btspec;
using namespace btspec::specfun;

namespace {

// Ascending power series for J_nu.
double series_J(double nu, double z) {
  double sum = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double term = std::pow(-1.0, k) * std::pow(0.5 * z, 2 * k + nu) /
                        (std::tgamma(k + 1.0) * std::tgamma(k + nu + 1.0));
    sum += term;
    if (k > 5 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double dJ_oracle(int n, double z) {
  if (n == 0) return -std::cyl_bessel_j(1.0, z);
  return 0.5 * (std::cyl_bessel_j(n - 1.0, z) - std::cyl_bessel_j(n + 1.0, z));
}

double dj_sph_oracle(int n, double z) {
  if (n == 0) return -std::sph_bessel(1, z);
  return std::sph_bessel(n - 1, z) - (n + 1.0) / z * std::sph_bessel(n, z);
}

}  // namespace

TEST_CASE("J_{-2/3} matches the ascending series") {
  for (double z : {0.3, 0.9, 1.2430462596, 2.0, 3.7, 5.5, 8.0}) {
    const double ref = series_J(kMinusTwoThirds, z);
    CHECK(bessel_j(kMinusTwoThirds, z) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("interval constants are zeros of J_{-2/3}") {
  const auto j = interval_branch_constants(4);
  REQUIRE(j.size() == 4);
  CHECK(j[0] == doctest::Approx(1.2430462596).epsilon(1e-9));
  for (double z : j) CHECK(std::abs(series_J(kMinusTwoThirds, z)) < 1e-10);
  for (std::size_t i = 1; i < j.size(); ++i) CHECK(j[i] > j[i - 1] + 2.5);
  CHECK(std::sqrt(3.0) * 27.0 / 4.0 * j[0] * j[0] == doctest::Approx(18.06).epsilon(0.5e-3));
  CHECK(std::sqrt(3.0) * 27.0 / 4.0 * j[1] * j[1] == doctest::Approx(229.35).epsilon(0.5e-3));
}

TEST_CASE("known derivative zeros") {
  CHECK(zeros_dJ(1, 1).zeros[0] == doctest::Approx(1.841183781340659).epsilon(1e-12));
  CHECK(zeros_dJ(0, 1).zeros[0] == doctest::Approx(3.831705970207512).epsilon(1e-12));
  CHECK(zeros_dJ(2, 1).zeros[0] == doctest::Approx(3.054236928227140).epsilon(1e-12));
  CHECK(zeros_dj_spherical(1, 1).zeros[0] == doctest::Approx(2.081575977818101).epsilon(1e-12));
  CHECK(zeros_dj_spherical(0, 1).zeros[0] == doctest::Approx(4.493409457909064).epsilon(1e-12));
  CHECK(zeros_dj_spherical(2, 1).zeros[0] == doctest::Approx(3.342093657365694).epsilon(1e-12));
}

TEST_CASE("derivative zeros satisfy the independent derivative formula") {
  for (int n = 0; n <= 6; ++n) {
    for (double z : zeros_dJ(n, 12).zeros) CHECK(std::abs(dJ_oracle(n, z)) < 1e-12);
    for (double z : zeros_dj_spherical(n, 12).zeros) CHECK(std::abs(dj_sph_oracle(n, z)) < 1e-12);
    CHECK(bessel_j_prime(n, 2.3) == doctest::Approx(dJ_oracle(n, 2.3)).epsilon(1e-12));
    CHECK(sph_bessel_j_prime(n, 2.3) == doctest::Approx(dj_sph_oracle(n, 2.3)).epsilon(1e-12));
  }
}

TEST_CASE("property: zeros increase, spacing tends to pi, none skipped") {
  for (int n = 0; n <= 5; ++n) {
    const auto z = zeros_dJ(n, 30).zeros;
    for (std::size_t i = 1; i < z.size(); ++i) {
      CHECK(z[i] > z[i - 1]);
      // a sign change of J'_n at the midpoints of consecutive zeros rules out skipped roots
      const double a = dJ_oracle(n, 0.5 * (z[i - 1] + z[i]));
      const double b = dJ_oracle(n, z[i] + 0.5 * (z[i] - z[i - 1]));
      CHECK(a * b < 0.0);
    }
    CHECK(z.back() - z[z.size() - 2] == doctest::Approx(kPi).epsilon(1e-2));
  }
}

TEST_CASE("McMahon asymptotics agree for large k") {
  for (int n = 0; n <= 4; ++n) {
    const auto z = zeros_dJ(n, 20).zeros;
    const auto s = zeros_dj_spherical(n, 20).zeros;
    for (int k = 10; k <= 20; ++k) {
      // bounded by twice the first omitted term of each expansion
      const double mu = 4.0 * n * n;
      const double e = 8.0 * ((n == 0 ? k + 1 : k) + 0.5 * n - 0.75) * kPi;
      const double next = 32.0 * (83.0 * mu * mu * mu + 2075.0 * mu * mu - 3039.0 * mu + 3537.0) /
                          (15.0 * std::pow(e, 5));
      CHECK(std::abs(z[k - 1] - mcmahon_dJ(n, k)) < 2.0 * next + 1e-12);
      const double nu = (2.0 * n + 1.0) * (2.0 * n + 1.0);
      const double es = 8.0 * ((n == 0 ? k + 1 : k) + 0.5 * n - 0.5) * kPi;
      const double nexts = 4.0 * (7.0 * nu * nu + 154.0 * nu + 95.0) / (3.0 * es * es * es);
      CHECK(std::abs(s[k - 1] - mcmahon_dj_spherical(n, k)) < 2.0 * nexts + 1e-12);
    }
  }
}

TEST_CASE("bounded zero tables are prefixes of the counted tables") {
  const auto a = zeros_dJ_below(3, 40.0).zeros;
  const auto b = zeros_dJ(3, static_cast<int>(a.size()) + 1).zeros;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(a.back() < 40.0);
  CHECK(b.back() >= 40.0);
  const auto c = zeros_dj_spherical_below(2, 25.0).zeros;
  const auto d = zeros_dj_spherical(2, static_cast<int>(c.size())).zeros;
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == d[i]);
}

TEST_CASE("Airy derivative zero constant") {
  CHECK(std::abs(airy_ai_prime(kAiryPrimeZero1)) < 1e-12);
  CHECK(kAiryPrimeZero1 == doctest::Approx(-1.02).epsilon(0.5e-2 / 1.02));
  CHECK(airy_ai_prime(kAiryPrimeZero1 - 0.01) * airy_ai_prime(kAiryPrimeZero1 + 0.01) < 0.0);
}

TEST_CASE("invalid arguments raise DomainError") {
  CHECK_THROWS_AS(interval_branch_constants(0), DomainError);
}
