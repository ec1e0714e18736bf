// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner: `acceptance [1..9 | all]`, one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "btspec/basis.hpp"
#include "btspec/branchpoints.hpp"
#include "btspec/fieldmap.hpp"
#include "btspec/matrices.hpp"
#include "btspec/oracle.hpp"
#include "btspec/signal.hpp"
#include "btspec/spectrum.hpp"
#include "btspec/sweep.hpp"
#include "quadrature_oracle.hpp"
#include "test_util.hpp"

using namespace btspec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Report {
  bool pass = true;
  std::ostringstream log;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    log << "    [" << (ok ? "ok" : "FAIL") << "] " << what << "\n";
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// |x - ref| within half a unit of the third significant digit.
bool three_digits(double x, double ref) {
  if (ref == 0.0) return std::abs(x) < 1e-12;
  const double e = std::floor(std::log10(std::abs(ref)));
  return std::abs(x - ref) <= 0.5 * std::pow(10.0, e - 2);
}

std::vector<double> expand(const std::vector<std::pair<double, int>>& t) {
  std::vector<double> out;
  for (auto [v, k] : t) out.insert(out.end(), k, v);
  return out;
}

CMatrix cylinder_gradient(const OperatorMatrices& M, double eta) { return gradient_matrix_cylinder(M, eta); }

std::vector<BranchPoint> sweep_points(const OperatorMatrices& M, const CMatrix& B, double g_max,
                                      int tracked, double step = 0.05) {
  SweepOptions o;
  o.g_max = g_max;
  o.step = step;
  o.tracked = tracked;
  return find_branch_points(M, B, run_sweep(M, B, o));
}

std::string describe(const std::vector<BranchPoint>& bps) {
  std::string s;
  for (const BranchPoint& bp : bps) {
    s += fmt("%.4f(o%d:", bp.g_star, bp.order);
    for (std::size_t i = 0; i < bp.branches.size(); ++i)
      s += fmt(i ? ",%d" : "%d", bp.branches[i] + 1);
    s += ") ";
  }
  return s;
}

const BranchPoint* nearest(const std::vector<BranchPoint>& bps, double g) {
  const BranchPoint* best = nullptr;
  for (const BranchPoint& bp : bps)
    if (!best || std::abs(bp.g_star - g) < std::abs(best->g_star - g)) best = &bp;
  return best;
}

void criterion1(Report& r) {
  const auto t0 = Clock::now();
  const BasisSet s = build_sphere_basis(17);
  const BasisSet c = build_cylinder_basis(13, 1.0, 1.0);
  const double dt = seconds_since(t0);
  const auto sref = expand({{0.0, 1}, {4.33, 3}, {11.17, 5}, {20.19, 1}, {20.38, 7}});
  const auto cref = expand({{0.0, 1}, {3.39, 2}, {9.33, 2}, {9.87, 1}, {13.26, 2}, {14.68, 1},
                            {17.65, 2}, {19.20, 2}});
  bool ok = s.size() == sref.size();
  for (std::size_t i = 0; ok && i < sref.size(); ++i) ok = three_digits(s.eigenvalue[i], sref[i]);
  r.check(ok, "sphere basis, 17 eigenvalues to 3 significant digits");
  ok = c.size() == cref.size();
  for (std::size_t i = 0; ok && i < cref.size(); ++i) ok = three_digits(c.eigenvalue[i], cref[i]);
  r.check(ok, "cylinder basis, 13 eigenvalues to 3 significant digits");
  r.check(dt < 1.0, fmt("runtime %.3f s < 1 s", dt));
}

void criterion2(Report& r) {
  const auto t0 = Clock::now();
  const OperatorMatrices M = assemble(build_sphere_basis(333));
  const auto bps = sweep_points(M, M.Bz, 25.0, 17);
  const double dt = seconds_since(t0);
  r.log << "    detected: " << describe(bps) << "\n";
  const double target[4] = {5.622, 12.1, 20.1, 23.84}, tol[4] = {0.01, 0.1, 0.1, 0.05};
  const int order[4] = {2, 4, 4, 2};
  for (int i = 0; i < 4; ++i) {
    const BranchPoint* bp = nearest(bps, target[i]);
    const bool ok = bp && std::abs(bp->g_star - target[i]) <= tol[i] && bp->order == order[i];
    r.check(ok, fmt("g* = %g +- %g, order %d: nearest %.5f order %d", target[i], tol[i], order[i],
                    bp ? bp->g_star : NAN, bp ? bp->order : 0));
  }
  r.check(dt < 300.0, fmt("runtime %.1f s < 300 s at N = 333", dt));
}

void criterion3(Report& r) {
  const OperatorMatrices I = assemble(build_interval_basis(60, 1.0));
  const auto bi = sweep_points(I, I.Bz, 20.0, 6);
  r.log << "    interval: " << describe(bi) << "\n";
  r.check(!bi.empty() && std::abs(bi.front().g_star - 18.06) <= 0.05,
          fmt("swept interval point %.5f = 18.06 +- 0.05", bi.empty() ? NAN : bi.front().g_star));
  const auto an = interval_branch_points_analytic(2);
  r.check(std::abs(an[0] - 18.06) <= 0.05, fmt("analytic first point %.5f", an[0]));
  r.check(std::abs(an[1] - 229.35) <= 1.0, fmt("analytic second point %.4f = 229.35 +- 1", an[1]));
  const OperatorMatrices D = assemble(build_disk_basis(150));
  const auto bd = sweep_points(D, D.Bx, 15.0, 12);
  r.log << "    disk: " << describe(bd) << "\n";
  for (double g : {3.76, 9.39, 13.87}) {
    const BranchPoint* bp = nearest(bd, g);
    r.check(bp && std::abs(bp->g_star - g) <= 0.02,
            fmt("disk point %.2f +- 0.02: nearest %.5f", g, bp ? bp->g_star : NAN));
  }
}

void criterion4(Report& r) {
  const OperatorMatrices C = assemble(build_cylinder_basis(300, 1.0, 1.0));
  {
    const double eta = std::atan(18.06 / 3.76);
    const auto bps = sweep_points(C, cylinder_gradient(C, eta), 20.0, 12);
    r.log << "    eta = atan(18.06/3.76): " << describe(bps) << "\n";
    r.check(!bps.empty() && std::abs(bps.front().g_star - 18.5) <= 0.1,
            fmt("first point %.5f = 18.5 +- 0.1", bps.empty() ? NAN : bps.front().g_star));
  }
  const double g1d = 3.76, g1i = 18.06;
  for (double eta : {kPi / 4, kPi / 3}) {
    const double gd = g1d / std::cos(eta), gi = g1i / std::sin(eta);
    const auto bps = sweep_points(C, cylinder_gradient(C, eta), std::max(gd, gi) * 1.02, 12);
    r.log << fmt("    eta = %.4f: ", eta) << describe(bps) << "\n";
    for (double g : {gd, gi}) {
      const BranchPoint* bp = nearest(bps, g);
      r.check(bp && std::abs(bp->g_star - g) <= 0.005 * g,
              fmt("eta %.4f: expected %.4f, nearest %.5f (0.5%%)", eta, g, bp ? bp->g_star : NAN));
    }
  }
}

void criterion5(Report& r) {
  const OperatorMatrices S = assemble(build_sphere_basis(333));
  {
    const Spectrum s = compute_spectrum(S, S.Bz, 2.0);
    const LowModes lm = low_modes(s);
    const SignalCoefficients c = compute_coefficients(s, S);
    const cd l1 = s.eigenvalues[lm.first];
    const double c11 = c.C(lm.first, lm.first).real();
    r.check(!lm.complex_pair && std::abs(l1.imag()) < 1e-9 && std::abs(l1.real() - 0.188) <= 0.002,
            fmt("g = 2: lambda1 = %.6f%+.2gi (0.188 +- 0.002)", l1.real(), l1.imag()));
    r.check(std::abs(c11 - 1.14) <= 0.01, fmt("g = 2: C11 = %.5f (1.14 +- 0.01)", c11));
  }
  {
    const Spectrum s = compute_spectrum(S, S.Bz, 15.0);
    const LowModes lm = low_modes(s);
    const SignalCoefficients c = compute_coefficients(s, S);
    const cd l1 = s.eigenvalues[lm.first];
    const double c11 = c.C(lm.first, lm.first).real();
    const cd c12 = c.C(lm.first, lm.second);
    r.check(lm.complex_pair && std::abs(l1.real() - 4.67) <= 0.02 && std::abs(l1.imag() - 6.68) <= 0.02,
            fmt("g = 15: lambda1 = %.6f%+.6fi (4.67 + 6.68i +- 0.02)", l1.real(), l1.imag()));
    r.check(std::abs(c11 - 1.12) <= 0.01, fmt("g = 15: C11 = %.5f (1.12 +- 0.01)", c11));
    r.check(std::abs(c12.real() + 0.46) <= 0.01 && std::abs(c12.imag() - 0.18) <= 0.01,
            fmt("g = 15: C12 = %.5f%+.5fi (-0.46 + 0.18i +- 0.01)", c12.real(), c12.imag()));
  }
}

void criterion6(Report& r) {
  const auto t0 = Clock::now();
  const OperatorMatrices S = assemble(build_sphere_basis(200));
  const OperatorMatrices C = assemble(build_cylinder_basis(200, 1.0, 1.0));
  const std::vector<double> ts{0.01, 0.1, 0.5, 1.0};
  for (int geo = 0; geo < 2; ++geo) {
    const OperatorMatrices& M = geo == 0 ? S : C;
    const CMatrix B = geo == 0 ? M.Bz : cylinder_gradient(M, kPi / 4);
    for (double g : {0.0, 2.0, 15.0}) {
      const Spectrum p = compute_spectrum(M, B, g), m = compute_spectrum(M, B, -g);
      const SignalCoefficients c = compute_coefficients(p, m, M);
      const std::vector<cd> ref = signal_matrix(M, B, g, ts);
      double worst = 0.0;
      for (std::size_t i = 0; i < ts.size(); ++i)
        worst = std::max(worst, std::abs(signal_spectral(p, m, c, ts[i]) - ref[i]) / std::abs(ref[i]));
      r.check(worst < 1e-6, fmt("%s g = %g: max relative route difference %.3g < 1e-6",
                                geo == 0 ? "sphere" : "cylinder", g, worst));
    }
  }
  const OperatorMatrices S3 = assemble(build_sphere_basis(333));
  {
    WalkConfig w;
    w.domain = kernels::Domain::Sphere;
    w.walkers = 100000;
    w.g_bar = 2.0;
    w.t_bar = 0.5;
    w.direction = {0.0, 0.0, 1.0};
    w.seed = 1;
    const WalkResult mc = mc_signal(w);
    const cd ref = signal_matrix(S3, S3.Bz, 2.0, 0.5);
    const double d = std::abs(mc.S - ref);
    r.check(d < 3.0 * mc.stderr_, fmt("MC sphere g = 2 t = 0.5: |%.6f - %.6f| = %.3g < 3 x %.3g",
                                      mc.S.real(), ref.real(), d, mc.stderr_));
  }
  {
    const OperatorMatrices C3 = assemble(build_cylinder_basis(300, 1.0, 1.0));
    WalkConfig w;
    w.domain = kernels::Domain::Cylinder;
    w.walkers = 100000;
    w.g_bar = 5.0;
    w.t_bar = 0.3;
    w.direction = {std::cos(kPi / 4), 0.0, std::sin(kPi / 4)};
    w.seed = 1;
    const WalkResult mc = mc_signal(w);
    const cd ref = signal_matrix(C3, cylinder_gradient(C3, kPi / 4), 5.0, 0.3);
    const double d = std::abs(mc.S - ref);
    r.check(d < 3.0 * mc.stderr_, fmt("MC cylinder eta = pi/4 g = 5 t = 0.3: |%.6f - %.6f| = %.3g < 3 x %.3g",
                                      mc.S.real(), ref.real(), d, mc.stderr_));
  }
  const double dt = seconds_since(t0);
  r.check(dt < 600.0, fmt("runtime %.1f s < 600 s", dt));
}

void criterion7(Report& r) {
  const OperatorMatrices S = assemble(build_sphere_basis(333));
  {
    const Spectrum s = compute_spectrum(S, S.Bz, 2.0);
    const LowModes lm = low_modes(s);
    const SignalCoefficients c = compute_coefficients(s, S);
    const std::vector<double> ts{0.5, 0.6, 0.75, 1.0, 1.5, 2.0, 3.0};
    const auto ref = signal_matrix(S, S.Bz, 2.0, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double one = signal_one_mode(s.eigenvalues[lm.first].real(), c.C(lm.first, lm.first).real(), ts[i]);
      const double err = std::abs(one - ref[i].real()) / std::abs(ref[i]);
      r.check(err < 0.02, fmt("one mode, g = 2, t = %.2f: relative error %.4f < 0.02", ts[i], err));
    }
  }
  {
    const Spectrum s = compute_spectrum(S, S.Bz, 15.0);
    const LowModes lm = low_modes(s);
    const SignalCoefficients c = compute_coefficients(s, S);
    const std::vector<double> ts{0.1, 0.2, 0.3, 0.4, 0.5, 0.75, 1.0, 1.5, 2.0};
    const auto ref = signal_matrix(S, S.Bz, 15.0, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double two = signal_two_mode(s.eigenvalues[lm.first], c.C(lm.first, lm.first).real(),
                                         c.C(lm.first, lm.second), ts[i]);
      const double err = std::abs(two - ref[i].real()) / std::abs(ref[i]);
      r.check(err < 0.05, fmt("two mode, g = 15, t = %.2f: relative error %.4f < 0.05", ts[i], err));
    }
  }
}

double gram_residual(const Spectrum& s, const OperatorMatrices& M) {
  const CMatrix G = bilinear_gram(M, s.X);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    if (s.flags[i].near_branch_point) continue;
    for (Eigen::Index j = 0; j < G.cols(); ++j) {
      if (s.flags[j].near_branch_point) continue;
      worst = std::max(worst, std::abs(G(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

void criterion8(Report& r) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> ug(0.0, 30.0), uth(0.0, kPi), uph(0.0, 2 * kPi);
  const OperatorMatrices S = assemble(build_sphere_basis(150));
  const OperatorMatrices C = assemble(build_cylinder_basis(150, 1.0, 1.0));
  {
    double worst = 0.0;
    for (int t = 0; t < 4; ++t) {
      const double g = ug(rng);
      worst = std::max(worst, gram_residual(compute_spectrum(S, gradient_matrix_sphere(S, uth(rng), uph(rng)), g), S));
      worst = std::max(worst, gram_residual(compute_spectrum(C, cylinder_gradient(C, uth(rng) / 2), g), C));
    }
    r.check(worst < 1e-7, fmt("bilinear orthonormality away from flagged rows: %.3g < 1e-7", worst));
  }
  {
    const OperatorMatrices S3 = assemble(build_sphere_basis(333));
    double worst = 0.0;
    for (const OperatorMatrices* M : {&S3, &C})
      for (const CMatrix* B : {&M->Bx, &M->By, &M->Bz})
        if (B->size()) worst = std::max(worst, (*B - B->adjoint()).cwiseAbs().maxCoeff());
    r.check(worst < 1e-14, fmt("gradient matrices Hermitian: %.3g < 1e-14", worst));
  }
  {
    const BasisSet b = build_sphere_basis(12);
    const OperatorMatrices M = assemble(b);
    const test::SphereOracle o(b);
    double worst = 0.0;
    for (Eigen::Index a = 0; a < M.size(); ++a)
      for (Eigen::Index c = 0; c < M.size(); ++c) {
        worst = std::max(worst, std::abs(M.Bx(a, c) - o.element(a, c, 0)));
        worst = std::max(worst, std::abs(M.By(a, c) - o.element(a, c, 1)));
        worst = std::max(worst, std::abs(M.Bz(a, c) - o.element(a, c, 2)));
      }
    const BasisSet db = build_disk_basis(12);
    const OperatorMatrices D = assemble(db);
    const test::DiskOracle od(db);
    for (Eigen::Index a = 0; a < D.size(); ++a)
      for (Eigen::Index c = 0; c < D.size(); ++c) {
        worst = std::max(worst, std::abs(D.Bx(a, c) - od.element(a, c, 0)));
        worst = std::max(worst, std::abs(D.By(a, c) - od.element(a, c, 1)));
      }
    const OperatorMatrices I = assemble(build_interval_basis(12, 1.0));
    for (Eigen::Index a = 0; a < I.size(); ++a)
      for (Eigen::Index c = 0; c < I.size(); ++c)
        worst = std::max(worst, std::abs(I.Bz(a, c) -
                                         test::interval_oracle(I.basis.index[a].m, I.basis.index[c].m, 1.0)));
    r.check(worst < 1e-8, fmt("quadrature oracle, sphere/disk/interval N = 12: %.3g < 1e-8", worst));
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 4; ++t) {
      const double g = ug(rng);
      const auto es = compute_spectrum(S, gradient_matrix_sphere(S, uth(rng), uph(rng)), g).eigenvalues;
      worst = std::max(worst, test::spectrum_distance(es, test::conj_all(es)));
      const auto ec = compute_spectrum(C, cylinder_gradient(C, uth(rng) / 2), g).eigenvalues;
      worst = std::max(worst, test::spectrum_distance(ec, test::conj_all(ec)));
    }
    r.check(worst < 1e-8, fmt("PT conjugation closure: %.3g < 1e-8", worst));
  }
  {
    double worst = 0.0;
    for (double g : {1.0, 7.5, 15.0}) {
      const auto ref = compute_spectrum(S, S.Bz, g).eigenvalues;
      for (int t = 0; t < 2; ++t)
        worst = std::max(worst, test::spectrum_distance(
                                    compute_spectrum(S, gradient_matrix_sphere(S, uth(rng), uph(rng)), g).eigenvalues, ref));
    }
    r.check(worst < 1e-8, fmt("sphere spectrum direction invariance: %.3g < 1e-8", worst));
  }
  {
    const Spectrum s = compute_spectrum(S, S.Bx, 15.0);
    const LowModes lm = low_modes(s);
    std::vector<Point3> p, q;
    for (double rr : {0.0, 0.3, 0.7, 1.0})
      for (double th : {0.2, 1.0, 2.5})
        for (double ph : {0.0, 1.1, 4.0}) {
          p.push_back({rr * std::sin(th) * std::cos(ph), rr * std::sin(th) * std::sin(ph), rr * std::cos(th)});
          q.push_back({-p.back()[0], -p.back()[1], p.back()[2]});
        }
    const auto v1 = eval_eigenfunction(s.X.row(lm.first).transpose(), S.basis, q);
    const auto v2 = eval_eigenfunction(s.X.row(lm.second).transpose(), S.basis, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(v2[i] - std::conj(v1[i])));
    r.check(lm.complex_pair && worst < 1e-6, fmt("reflection symmetry v2 = conj(v1 o Rz) at g = 15: %.3g < 1e-6", worst));
  }
  {
    const OperatorMatrices R = assemble(build_reduced_sphere_basis(60));
    BranchPoint bp;
    bp.order = 2;
    bp.branches = {0, 1};
    bp.bracket_lo = 5.5;
    bp.bracket_hi = 5.7;
    bp.center = 2.6;
    const double g1 = refine(R, R.Bz, bp);
    const double h = 2e-3;
    double worst = 0.0;
    for (double t : {0.1, 0.5})
      for (double g0 : {g1 - 0.01, g1 - 0.001, g1, g1 + 0.001, g1 + 0.01}) {
        const cd d2 = (signal_matrix(R, R.Bz, g0 + h, t) - 2.0 * signal_matrix(R, R.Bz, g0, t) +
                       signal_matrix(R, R.Bz, g0 - h, t)) / (h * h);
        worst = std::max(worst, std::abs(d2));
      }
    r.check(worst < 1.0, fmt("signal second difference across g1 = %.6f: %.3g < 1", g1, worst));
    double cmin = 1e300;
    for (double dg : {-1e-6, 1e-6}) {
      const Spectrum s = compute_spectrum(R, R.Bz, g1 + dg);
      const SignalCoefficients c = compute_coefficients(s, R);
      const LowModes lm = low_modes(s);
      cmin = std::min({cmin, c.C(lm.first, lm.first).real(), -c.C(lm.first, lm.second).real()});
    }
    r.check(cmin > 1e3, fmt("C11 and -Re C12 within 1e-6 of g1: min %.3g > 1e3", cmin));
  }
}

void criterion9(Report& r) {
  const OperatorMatrices R = assemble(build_reduced_sphere_basis(700));
  std::vector<double> errs;
  double im_ratio = 0.0;
  for (double g : {50.0, 200.0, 1000.0}) {
    const Spectrum s = compute_spectrum(R, R.Bz, g);
    const cd l1 = s.eigenvalues[low_modes(s).first];
    const double a = lambda1_asymptotic(g);
    errs.push_back(std::abs(l1.real() - a) / std::abs(l1.real()));
    im_ratio = l1.imag() / g;
    r.log << fmt("    g = %g: lambda1 = %.6f%+.6fi, three-term Re = %.6f, rel err %.4f\n", g, l1.real(),
                 l1.imag(), a, errs.back());
  }
  r.check(errs[1] < errs[0] && errs[2] < errs[1], "relative error of Re lambda1 decreases monotonically");
  r.check(std::abs(im_ratio - 1.0) <= 0.05, fmt("Im lambda1 / g at g = 1000: %.4f within 5%% of R = 1", im_ratio));
}

const std::vector<std::function<void(Report&)>> kCriteria{criterion1, criterion2, criterion3,
                                                          criterion4, criterion5, criterion6,
                                                          criterion7, criterion8, criterion9};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "all") {
      which.clear();
      for (int k = 1; k <= 9; ++k) which.push_back(k);
    } else {
      const int k = std::atoi(a.c_str());
      if (k < 1 || k > 9) {
        std::fprintf(stderr, "usage: acceptance [1..9 | all]...\n");
        return 2;
      }
      which.push_back(k);
    }
  }
  if (which.empty())
    for (int k = 1; k <= 9; ++k) which.push_back(k);
  int failed = 0;
  for (int k : which) {
    Report r;
    const auto t0 = Clock::now();
    try {
      kCriteria[k - 1](r);
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s", r.log.str().c_str());
    std::printf("criterion %d: %s (%.1f s)\n", k, r.pass ? "PASS" : "FAIL", seconds_since(t0));
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  return failed ? 1 : 0;
}
