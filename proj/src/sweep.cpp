// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "btspec/hungarian.hpp"
#include "btspec/parallel.hpp"

namespace btspec {

namespace {

constexpr double kTieEps = 1e-12;

double scale_of(cd a) { return std::max(1.0, std::abs(a)); }

// Raw spectrum with self products and near-branch flags, rows unit norm.
Spectrum raw_spectrum(const OperatorMatrices& mat, const CMatrix& B, double g,
                      const SpectrumOptions& so) {
  Spectrum s = diagonalize(mat, B, g, true, so.balance);
  s.self_product.resize(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const CVector x = s.X.row(j).transpose();
    s.self_product[j] = std::abs(bilinear(mat, x, x)) / x.squaredNorm();
    s.flags[j].near_branch_point = s.self_product[j] < so.branch_threshold;
  }
  return s;
}

Spectrum permute_rows(const Spectrum& s, const std::vector<int>& perm) {
  Spectrum t;
  t.g = s.g;
  t.normalized = s.normalized;
  const Eigen::Index n = static_cast<Eigen::Index>(perm.size());
  t.eigenvalues.resize(n);
  t.flags.resize(n);
  t.self_product.resize(n);
  if (s.X.size()) t.X.resize(n, s.X.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const int r = perm[i];
    t.eigenvalues[i] = s.eigenvalues[r];
    t.flags[i] = s.flags[r];
    if (!s.self_product.empty()) t.self_product[i] = s.self_product[r];
    if (s.X.size()) t.X.row(i) = s.X.row(r);
  }
  return t;
}

// Normalized Hermitian overlap of two rows.
double overlap(const Spectrum& a, int i, const Spectrum& b, int j) {
  if (!a.X.size() || !b.X.size()) return 0.0;
  return std::abs(a.X.row(i).conjugate().dot(b.X.row(j).conjugate())) /
         (a.X.row(i).norm() * b.X.row(j).norm());
}

// Returns the first tracked branch whose assignment is not certified, or -1.
int ambiguous_branch(const Spectrum& prev, const std::vector<cd>& pred, const Spectrum& next,
                     const std::vector<int>& perm, int tracked, double tol, int* rival) {
  const int n = static_cast<int>(next.eigenvalues.size());
  for (int i = 0; i < tracked; ++i) {
    const cd mu = next.eigenvalues[perm[i]];
    const double d1 = std::abs(pred[i] - mu);
    double d2 = HUGE_VAL;
    int who = -1;
    for (int k = 0; k < n; ++k) {
      const cd nu = next.eigenvalues[k];
      if (k == perm[i] || std::abs(nu - mu) <= tol * scale_of(mu)) continue;
      const double d = std::abs(pred[i] - nu);
      if (d < d2) {
        d2 = d;
        who = k;
      }
    }
    if (d2 < 2.0 * d1 + 1e-12 * scale_of(mu)) {
      // Eigenvector continuity settles crossings of decoupled branches.
      const double own = overlap(prev, i, next, perm[i]);
      if (own > 0.9 && overlap(prev, i, next, who) < 0.5 * own) continue;
      if (rival) *rival = who;
      return i;
    }
  }
  return -1;
}

}  // namespace

void order_conjugate_clusters(std::vector<cd>& ev, std::vector<int>& perm, int k, double tol) {
  k = std::min<int>(k, static_cast<int>(ev.size()));
  std::vector<int> cluster(k, -1);
  int nc = 0;
  for (int i = 0; i < k; ++i) {
    if (std::abs(ev[i].imag()) <= 1e-9 || cluster[i] >= 0) continue;
    cluster[i] = nc;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j) {
        if (cluster[j] >= 0 || std::abs(ev[j].imag()) <= 1e-9) continue;
        const double s = tol * scale_of(ev[a]);
        if (std::abs(ev[a] - ev[j]) < s || std::abs(ev[a] - std::conj(ev[j])) < s) {
          cluster[j] = nc;
          stack.push_back(j);
        }
      }
    }
    ++nc;
  }
  for (int c = 0; c < nc; ++c) {
    std::vector<int> idx, pos, neg;
    for (int i = 0; i < k; ++i)
      if (cluster[i] == c) {
        idx.push_back(i);
        (ev[i].imag() > 0 ? pos : neg).push_back(i);
      }
    if (pos.size() != neg.size() || pos.empty()) continue;
    std::vector<int> order = pos;
    order.insert(order.end(), neg.begin(), neg.end());
    std::vector<cd> nev;
    std::vector<int> np;
    for (int o : order) {
      nev.push_back(ev[o]);
      np.push_back(perm[o]);
    }
    for (std::size_t q = 0; q < idx.size(); ++q) {
      ev[idx[q]] = nev[q];
      perm[idx[q]] = np[q];
    }
  }
}

std::vector<int> match_step(const Spectrum& prev, const Spectrum& next,
                            const std::vector<cd>* predicted) {
  const Eigen::Index n = prev.size();
  if (next.size() != n) throw DomainError("match_step: spectra differ in size");
  const std::vector<cd>& pred = predicted ? *predicted : prev.eigenvalues;
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cost(i, j) = std::norm(pred[i] - next.eigenvalues[j]);
  if (prev.X.size() && next.X.size()) {
    const RVector pn = prev.X.rowwise().norm(), nn = next.X.rowwise().norm();
    const CMatrix ov = prev.X.conjugate() * next.X.transpose();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) cost(i, j) -= kTieEps * std::abs(ov(i, j)) / (pn[i] * nn[j]);
  }
  return hungarian(cost);
}

BranchSweep run_sweep(const OperatorMatrices& mat, const CMatrix& B, const SweepOptions& opt) {
  if (!(opt.g_max >= 0.0) || !(opt.step > 0.0))
    throw ConfigError("sweep: need g_max >= 0 and step > 0");
  const int N = static_cast<int>(mat.size());
  BranchSweep out;
  out.tracked = std::clamp(opt.tracked, 1, N);
  const int K = out.tracked;
  const SpectrumOptions& so = opt.spectrum;

  // Base grid, diagonalized ahead in parallel batches.
  std::vector<double> grid;
  const long nsteps = std::lround(std::ceil(opt.g_max / opt.step - 1e-9));
  for (long i = 0; i <= nsteps; ++i) grid.push_back(std::min(opt.g_max, i * opt.step));
  std::map<double, Spectrum> cache;
  const unsigned workers = worker_count(opt.threads);
  std::size_t next_batch = 0;
  auto fetch = [&](std::size_t gi) -> Spectrum {
    if (!cache.count(grid[gi])) {
      if (gi >= next_batch) {
        const std::size_t end = std::min(grid.size(), gi + std::max(1u, workers));
        std::vector<Spectrum> tmp(end - gi);
        parallel_for(end - gi, [&](std::size_t q) { tmp[q] = raw_spectrum(mat, B, grid[gi + q], so); },
                     workers);
        for (std::size_t q = 0; q < tmp.size(); ++q) cache[grid[gi + q]] = std::move(tmp[q]);
        next_batch = end;
      } else {
        cache[grid[gi]] = raw_spectrum(mat, B, grid[gi], so);
      }
    }
    Spectrum s = std::move(cache[grid[gi]]);
    cache.erase(grid[gi]);
    return s;
  };

  auto record = [&](const Spectrum& raw, const std::vector<int>& perm, bool ambiguous, bool refined) {
    SweepPoint p;
    p.g = raw.g;
    p.perm = perm;
    p.ambiguous = ambiguous;
    p.refined = refined;
    p.eigenvalues.resize(N);
    p.self_product.resize(N);
    p.near_branch.resize(N);
    for (int i = 0; i < N; ++i) {
      p.eigenvalues[i] = raw.eigenvalues[perm[i]];
      p.self_product[i] = raw.self_product[perm[i]];
      p.near_branch[i] = raw.flags[perm[i]].near_branch_point;
    }
    if (opt.keep_vectors) {
      const Spectrum nrm = normalize(raw, mat, so);
      p.X.resize(K, N);
      for (int i = 0; i < K; ++i) p.X.row(i) = nrm.X.row(perm[i]);
    }
    out.points.push_back(std::move(p));
  };

  // g = 0: branches follow the basis order.
  Spectrum s0 = fetch(0);
  Spectrum basis_ref;
  basis_ref.eigenvalues.resize(N);
  for (int i = 0; i < N; ++i) basis_ref.eigenvalues[i] = mat.lambda[i];
  basis_ref.X = CMatrix::Identity(N, N);
  std::vector<int> perm = match_step(basis_ref, s0);
  record(s0, perm, false, false);
  Spectrum prev = permute_rows(s0, perm);
  std::vector<cd> prev2;  // eigenvalues at the point before prev
  double g_prev2 = 0.0;
  bool first_step = true;

  std::size_t gi = 1;
  double h = opt.step;
  while (gi < grid.size()) {
    const double target_base = grid[gi];
    double g_next = std::min(prev.g + h, target_base);
    for (;;) {
      const bool at_base = std::abs(g_next - target_base) < 1e-14;
      Spectrum raw = at_base ? fetch(gi) : raw_spectrum(mat, B, g_next, so);
      std::vector<cd> pred = prev.eigenvalues;
      if (!prev2.empty()) {
        const double t = (g_next - prev.g) / (prev.g - g_prev2);
        for (int i = 0; i < N; ++i) pred[i] = prev.eigenvalues[i] + t * (prev.eigenvalues[i] - prev2[i]);
      }
      std::vector<int> p = match_step(prev, raw, &pred);
      int rival = -1;
      const int amb = first_step ? -1 : ambiguous_branch(prev, pred, raw, p, K, so.degeneracy_tol, &rival);
      const double dh = g_next - prev.g;
      if (amb >= 0 && dh > opt.min_step * 1.5) {
        if (at_base) cache[g_next] = std::move(raw);
        g_next = prev.g + 0.5 * dh;
        continue;
      }
      if (amb >= 0) {
        Ambiguity a;
        a.g = g_next;
        a.branch_a = amb;
        a.chosen = p;
        a.alternative = p;
        const auto it = std::find(p.begin(), p.end(), rival);
        if (it != p.end()) {
          a.branch_b = static_cast<int>(it - p.begin());
          std::swap(a.alternative[amb], a.alternative[a.branch_b]);
        }
        out.ambiguities.push_back(a);
        std::ostringstream msg;
        msg << "ambiguous assignment at g=" << g_next << " branch " << amb;
        out.log.push_back(msg.str());
      }
      std::vector<cd> ev(N);
      for (int i = 0; i < N; ++i) ev[i] = raw.eigenvalues[p[i]];
      order_conjugate_clusters(ev, p, K);
      Spectrum cur = permute_rows(raw, p);
      if (first_step && opt.relabel_first_step) {
        // Within each degenerate class at g = 0, order labels by Re lambda at the first step.
        const auto& cls = mat.basis.degeneracy_class;
        for (int c = 0; c < mat.basis.num_classes(); ++c) {
          std::vector<int> members;
          for (int i = 0; i < N; ++i)
            if (cls[i] == c) members.push_back(i);
          if (members.size() < 2) continue;
          std::vector<int> order = members;
          std::sort(order.begin(), order.end(), [&](int a, int b) {
            return cur.eigenvalues[a].real() < cur.eigenvalues[b].real();
          });
          for (std::size_t q0 = 0; q0 < order.size();) {
            std::size_t e = q0 + 1;
            const double r0 = cur.eigenvalues[order[q0]].real();
            while (e < order.size() && cur.eigenvalues[order[e]].real() - r0 <=
                                           so.degeneracy_tol * std::max(1.0, std::abs(r0)))
              ++e;
            std::sort(order.begin() + q0, order.begin() + e);
            q0 = e;
          }
          std::vector<int> np = p, np0 = out.points[0].perm;
          for (std::size_t q = 0; q < members.size(); ++q) {
            np[members[q]] = p[order[q]];
            np0[members[q]] = out.points[0].perm[order[q]];
          }
          p = np;
          out.points[0].perm = np0;
          if (opt.keep_vectors) {
            const Spectrum nrm = normalize(s0, mat, so);
            for (int i = 0; i < K; ++i) out.points[0].X.row(i) = nrm.X.row(np0[i]);
          }
        }
        cur = permute_rows(raw, p);
        std::ostringstream msg;
        msg << "degenerate classes relabeled by Re lambda at g=" << g_next;
        out.log.push_back(msg.str());
      }
      record(raw, p, amb >= 0, !at_base);
      if (!at_base) {
        std::ostringstream msg;
        msg << "refined step " << dh << " at g=" << g_next;
        out.log.push_back(msg.str());
      }
      prev2 = prev.eigenvalues;
      g_prev2 = prev.g;
      prev = std::move(cur);
      first_step = false;
      if (at_base) {
        ++gi;
        h = std::min(opt.step, 2.0 * dh);
      } else {
        h = std::min(opt.step, 2.0 * dh);
      }
      break;
    }
  }
  return out;
}

}  // namespace btspec
