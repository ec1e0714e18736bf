// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/branchpoints.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "btspec/parallel.hpp"
#include "btspec/specfun.hpp"

namespace btspec {

namespace {

struct Transition {
  int branch;
  std::size_t lo, hi;  // point indices
};

// Indices of the `count` eigenvalues closest to the real point c.
std::vector<int> nearest(const std::vector<cd>& ev, double c, int count) {
  std::vector<int> idx(ev.size());
  std::iota(idx.begin(), idx.end(), 0);
  count = std::min<int>(count, static_cast<int>(ev.size()));
  std::partial_sort(idx.begin(), idx.begin() + count, idx.end(),
                    [&](int a, int b) { return std::abs(ev[a] - c) < std::abs(ev[b] - c); });
  idx.resize(count);
  return idx;
}

double indicator(const std::vector<cd>& ev, double c, int count) {
  double m = 0.0;
  for (int i : nearest(ev, c, count)) m = std::max(m, std::abs(ev[i].imag()));
  return m;
}

}  // namespace

std::vector<BranchPoint> detect(const BranchSweep& sw, const BranchPointOptions& opt) {
  std::vector<Transition> tr;
  const auto& P = sw.points;
  for (int b = 0; b < sw.tracked; ++b) {
    long last_real = -1;
    bool complex_now = false;
    for (std::size_t q = 0; q < P.size(); ++q) {
      const double im = std::abs(P[q].eigenvalues[b].imag());
      if (im < opt.noise_floor) {
        last_real = static_cast<long>(q);
        complex_now = false;
      } else if (im > opt.threshold && !complex_now) {
        complex_now = true;
        if (last_real >= 0) tr.push_back({b, static_cast<std::size_t>(last_real), q});
      }
    }
  }
  // Group transitions sharing the upper bracket point and the merged real part.
  std::vector<BranchPoint> out;
  std::vector<char> used(tr.size(), 0);
  for (std::size_t a = 0; a < tr.size(); ++a) {
    if (used[a]) continue;
    used[a] = 1;
    BranchPoint bp;
    bp.branches.push_back(tr[a].branch);
    std::size_t lo = tr[a].lo, hi = tr[a].hi;
    const cd ea = P[hi].eigenvalues[tr[a].branch];
    for (std::size_t c = a + 1; c < tr.size(); ++c) {
      if (used[c] || tr[c].hi != tr[a].hi) continue;
      const cd ec = P[hi].eigenvalues[tr[c].branch];
      if (std::abs(ec.real() - ea.real()) < 1e-6 * std::max(1.0, std::abs(ea.real()))) {
        used[c] = 1;
        bp.branches.push_back(tr[c].branch);
        lo = std::max(lo, tr[c].lo);
      }
    }
    std::sort(bp.branches.begin(), bp.branches.end());
    bp.order = static_cast<int>(bp.branches.size());
    bp.bracket_lo = P[lo].g;
    bp.bracket_hi = P[hi].g;
    bp.g_star = 0.5 * (bp.bracket_lo + bp.bracket_hi);
    bp.center = ea.real();
    out.push_back(bp);
  }
  std::sort(out.begin(), out.end(),
            [](const BranchPoint& x, const BranchPoint& y) { return x.g_star < y.g_star; });
  return out;
}

double refine(const OperatorMatrices& mat, const CMatrix& B, BranchPoint& bp,
              const BranchPointOptions& opt) {
  double lo = bp.bracket_lo, hi = bp.bracket_hi;
  const int cnt = std::max(2, bp.order);
  while (hi - lo > opt.width) {
    const double mid = 0.5 * (lo + hi);
    const auto ev = eigenvalues_only(mat, B, mid);
    if (indicator(ev, bp.center, cnt) > opt.threshold) {
      hi = mid;
      const auto idx = nearest(ev, bp.center, cnt);
      double c = 0.0;
      for (int i : idx) c += ev[i].real();
      bp.center = c / idx.size();
    } else {
      lo = mid;
    }
  }
  bp.bracket_lo = lo;
  bp.bracket_hi = hi;
  bp.g_star = 0.5 * (lo + hi);
  bp.refined = true;

  // Diagnostics on the real side of the bracket.
  Spectrum s = diagonalize(mat, B, lo, true);
  const auto idx = nearest(s.eigenvalues, bp.center, cnt);
  bp.gap_min = HUGE_VAL;
  bp.self_product_min = HUGE_VAL;
  double best_angle = HUGE_VAL;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const CVector x = s.X.row(idx[a]).transpose();
    bp.self_product_min = std::min(bp.self_product_min, std::abs(bilinear(mat, x, x)) / x.squaredNorm());
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      bp.gap_min = std::min(bp.gap_min, std::abs(s.eigenvalues[idx[a]] - s.eigenvalues[idx[b]]));
      const CVector y = s.X.row(idx[b]).transpose();
      const double c = std::min(1.0, std::abs(x.dot(y)) / (x.norm() * y.norm()));
      best_angle = std::min(best_angle, std::acos(c));
    }
  }
  bp.principal_angle = best_angle;
  return bp.g_star;
}

int classify_order(const OperatorMatrices& mat, const CMatrix& B, double g_star, double center,
                   double radius) {
  const auto ev = eigenvalues_only(mat, B, g_star);
  cd c = center;
  int count = 0;
  for (int it = 0; it < 4; ++it) {
    cd sum = 0.0;
    count = 0;
    for (const cd& e : ev)
      if (std::abs(e - c) < radius) {
        sum += e;
        ++count;
      }
    if (count == 0) {
      // Snap to the nearest eigenvalue.
      const auto idx = nearest(ev, center, 1);
      c = ev[idx[0]];
      continue;
    }
    c = sum / double(count);
  }
  return count;
}

std::vector<BranchPoint> find_branch_points(const OperatorMatrices& mat, const CMatrix& B,
                                            const BranchSweep& sweep,
                                            const BranchPointOptions& opt) {
  auto pts = detect(sweep, opt);
  parallel_for(pts.size(), [&](std::size_t i) {
    refine(mat, B, pts[i], opt);
    pts[i].order = classify_order(mat, B, pts[i].bracket_lo, pts[i].center, opt.cluster_radius);
    pts[i].order_unexpected = pts[i].order != 2 && pts[i].order != 4;
  }, opt.threads);
  return pts;
}

std::vector<double> interval_branch_points_analytic(int count) {
  std::vector<double> out;
  for (double j : specfun::interval_branch_constants(count))
    out.push_back(std::sqrt(3.0) * 27.0 / 4.0 * j * j);
  return out;
}

}  // namespace btspec
