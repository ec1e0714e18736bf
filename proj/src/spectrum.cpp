// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "btspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace btspec {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

bool close(cd a, cd b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Classes of eigenvalues equal within tol; each class sorted by index.
std::vector<std::vector<int>> degenerate_classes(const std::vector<cd>& ev, double tol) {
  const int n = static_cast<int>(ev.size());
  std::vector<int> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](int a, int b) { return ev[a].real() < ev[b].real(); });
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cd a = ev[ord[i]], b = ev[ord[j]];
      if (b.real() - a.real() > tol * std::max(1.0, std::max(std::abs(a), std::abs(b)))) break;
      if (close(a, b, tol)) uf.unite(ord[i], ord[j]);
    }
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& g : groups)
    if (g.size() > 1) out.push_back(std::move(g));
  return out;
}

cd principal_sqrt(cd z) { return std::sqrt(z); }

double gram_residual(const Eigen::Matrix2cd& T, const Eigen::Matrix2cd& C) {
  const Eigen::Matrix2cd R = T * C * T.transpose() - Eigen::Matrix2cd::Identity();
  return R.cwiseAbs().maxCoeff();
}

}  // namespace

bool Spectrum::any_flagged() const {
  return std::any_of(flags.begin(), flags.end(), [](const EigenFlags& f) {
    return f.near_branch_point || f.orthogonalization_failed;
  });
}

Spectrum diagonalize(const OperatorMatrices& mat, const CMatrix& B, double g, bool vectors,
                     bool balance) {
  const lapack_int n = static_cast<lapack_int>(mat.size());
  CMatrix A = cd(0.0, g) * B;
  A.diagonal() += mat.lambda.cast<cd>();
  CVector w(n);
  CMatrix VL(vectors ? n : 1, vectors ? n : 1);
  cd vr_dummy;
  lapack_int ilo = 0, ihi = 0;
  RVector scale(n), rconde(n), rcondv(n);
  double abnrm = 0.0;
  const lapack_int info = LAPACKE_zgeevx(
      LAPACK_COL_MAJOR, balance ? 'B' : 'N', vectors ? 'V' : 'N', 'N', 'N', n, A.data(), n,
      w.data(), VL.data(), vectors ? n : 1, &vr_dummy, 1, &ilo, &ihi, scale.data(), &abnrm,
      rconde.data(), rcondv.data());
  if (info != 0)
    throw NumericalError("eigensolver failed (info " + std::to_string(info) + ") at g = " +
                         std::to_string(g) + ", N = " + std::to_string(n) +
                         ", |M|_1 = " + std::to_string(abnrm));
  Spectrum s;
  s.g = g;
  s.eigenvalues.assign(w.data(), w.data() + n);
  if (vectors) s.X = VL.adjoint();
  s.flags.resize(n);
  return s;
}

std::vector<cd> eigenvalues_only(const OperatorMatrices& mat, const CMatrix& B, double g) {
  return diagonalize(mat, B, g, false).eigenvalues;
}

cd bilinear(const OperatorMatrices& mat, const CVector& x, const CVector& y) {
  cd s = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) s += x[k] * mat.w_sign[k] * y[mat.w_partner[k]];
  return s;
}

CMatrix bilinear_gram(const OperatorMatrices& mat, const CMatrix& X) {
  CMatrix Y(X.rows(), X.cols());
  for (Eigen::Index k = 0; k < X.cols(); ++k) Y.col(k) = mat.w_sign[k] * X.col(mat.w_partner[k]);
  return X * Y.transpose();
}

PairResult pair_transform(const Eigen::Matrix2cd& C) {
  PairResult best;
  const cd c11 = C(0, 0), c22 = C(1, 1), c12 = 0.5 * (C(0, 1) + C(1, 0));
  cd alpha;
  if (std::abs(c12) <= 1e-300) {
    alpha = 0.0;
  } else if (c11 == c22) {
    alpha = kPi / 4;
  } else {
    alpha = 0.5 * std::atan(2.0 * c12 / (c11 - c22));
  }
  const cd co = std::cos(alpha), si = std::sin(alpha);
  auto build = [&](cd A2, cd B2, bool stab) {
    PairResult r;
    if (!std::isfinite(std::abs(A2)) || !std::isfinite(std::abs(B2)) || std::abs(A2) < 1e-300 ||
        std::abs(B2) < 1e-300)
      return r;
    const cd A = principal_sqrt(A2), Bv = principal_sqrt(B2);
    r.T << co / A, si / A, -si / Bv, co / Bv;
    r.ok = gram_residual(r.T, C) < 1e-8;
    r.stabilized = stab;
    return r;
  };
  const cd d = co * co - si * si;
  PairResult plain;
  if (std::abs(d) > 1e-8) plain = build((c11 * co * co - c22 * si * si) / d,
                                        (c22 * co * co - c11 * si * si) / d, false);
  PairResult stab;
  const cd s2 = std::sin(2.0 * alpha);
  if (std::abs(s2) > 1e-300) {
    stab = build(0.5 * (c11 + c22) + c12 / s2, 0.5 * (c11 + c22) - c12 / s2, true);
  }
  if (plain.ok && (!stab.ok || gram_residual(plain.T, C) <= gram_residual(stab.T, C))) best = plain;
  else if (stab.ok) best = stab;
  else if (std::abs(c12) <= 1e-300) best = plain;
  return best;
}

PairResult orthogonalize_pair(const CVector& vj, const CVector& vk, const Eigen::Matrix2cd& C) {
  PairResult r = pair_transform(C);
  if (!r.ok) return r;
  r.a = r.T(0, 0) * vj + r.T(0, 1) * vk;
  r.b = r.T(1, 0) * vj + r.T(1, 1) * vk;
  return r;
}

Spectrum normalize(Spectrum s, const OperatorMatrices& mat, const SpectrumOptions& opt) {
  const Eigen::Index N = s.size();
  if (s.X.rows() != N) throw NumericalError("normalize: spectrum carries no eigenvectors");
  s.self_product.assign(N, 0.0);
  std::vector<cd> G(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const CVector x = s.X.row(j).transpose();
    G[j] = bilinear(mat, x, x);
    s.self_product[j] = std::abs(G[j]) / x.squaredNorm();
  }
  std::vector<bool> done(N, false);
  auto normalize_single = [&](Eigen::Index j) {
    const CVector x = s.X.row(j).transpose();
    const cd gj = bilinear(mat, x, x);
    if (std::abs(gj) / x.squaredNorm() < opt.branch_threshold) {
      s.flags[j].near_branch_point = true;
      s.X.row(j) /= x.norm();
    } else {
      s.X.row(j) /= principal_sqrt(gj);
    }
  };

  const auto classes = degenerate_classes(s.eigenvalues, opt.degeneracy_tol);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cls = classes[c];
    for (int j : cls) {
      s.flags[j].degenerate_class = static_cast<int>(c);
      s.flags[j].class_gt2 = cls.size() > 2;
      s.X.row(j) /= s.X.row(j).norm();
    }
    std::vector<int> rem(cls.begin(), cls.end());
    auto bl = [&](int a, int b) {
      return bilinear(mat, s.X.row(a).transpose(), s.X.row(b).transpose());
    };
    while (rem.size() >= 2) {
      const int i = rem[0];
      bool coupled = false;
      for (std::size_t q = 1; q < rem.size(); ++q)
        if (std::abs(bl(i, rem[q])) > 1e-10) coupled = true;
      if (!coupled && std::abs(bl(i, i)) >= opt.branch_threshold) {
        normalize_single(i);
        rem.erase(rem.begin());
        continue;
      }
      int partner = -1;
      PairResult pr;
      for (std::size_t q = 1; q < rem.size() && partner < 0; ++q) {
        Eigen::Matrix2cd C;
        C << bl(i, i), bl(i, rem[q]), bl(rem[q], i), bl(rem[q], rem[q]);
        if (std::abs(C.determinant()) < 1e-10) continue;
        pr = orthogonalize_pair(s.X.row(i).transpose(), s.X.row(rem[q]).transpose(), C);
        if (pr.ok) partner = rem[q];
      }
      if (partner < 0) {
        s.flags[i].orthogonalization_failed = true;
        normalize_single(i);
        rem.erase(rem.begin());
        continue;
      }
      s.X.row(i) = pr.a.transpose();
      s.X.row(partner) = pr.b.transpose();
      rem.erase(std::remove(rem.begin(), rem.end(), partner), rem.end());
      rem.erase(rem.begin());
      for (int k : rem) {
        const cd pa = bl(k, i), pb = bl(k, partner);
        s.X.row(k) -= pa * s.X.row(i) + pb * s.X.row(partner);
        s.X.row(k) /= s.X.row(k).norm();
      }
    }
    for (int k : rem) normalize_single(k);
    for (int j : cls) done[j] = true;
  }
  for (Eigen::Index j = 0; j < N; ++j)
    if (!done[j]) normalize_single(j);

  for (Eigen::Index j = 0; j < N; ++j) {
    Eigen::Index k = 0;
    if (std::abs(s.X(j, 0)) < 1e-12) s.X.row(j).cwiseAbs().maxCoeff(&k);
    if (s.X(j, k).real() < 0) s.X.row(j) *= -1.0;
  }
  s.normalized = true;
  return s;
}

Spectrum compute_spectrum(const OperatorMatrices& mat, const CMatrix& B, double g,
                          const SpectrumOptions& opt) {
  return normalize(diagonalize(mat, B, g, true, opt.balance), mat, opt);
}

Spectrum spectrum_at_negative_g(const Spectrum& s, const OperatorMatrices& mat) {
  Spectrum t = s;
  t.g = -s.g;
  for (auto& e : t.eigenvalues) e = std::conj(e);
  if (s.X.size() == 0) return t;
  const CMatrix Xc = s.X.conjugate();
  // (conj(X) W)(j, k') = sum_k conj X(j,k) W(k,k'), W(k, partner k) = sign k.
  for (Eigen::Index k = 0; k < Xc.cols(); ++k)
    t.X.col(mat.w_partner[k]) = mat.w_sign[k] * Xc.col(k);
  return t;
}

double residual(const Spectrum& s, const OperatorMatrices& mat, const CMatrix& B) {
  CMatrix M = cd(0.0, s.g) * B;
  M.diagonal() += mat.lambda.cast<cd>();
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const Eigen::RowVectorXcd x = s.X.row(j) / s.X.row(j).norm();
    const double r = (x * M - s.eigenvalues[j] * x).norm();
    worst = std::max(worst, r / norm);
  }
  return worst;
}

}  // namespace btspec
