// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "btspec/common.hpp"
#include "btspec/matrices.hpp"

namespace btspec {

struct EigenFlags {
  bool near_branch_point = false;
  int degenerate_class = -1;  // -1: simple eigenvalue
  bool class_gt2 = false;     // reduced by the greedy pairwise procedure
  bool orthogonalization_failed = false;
};

struct Spectrum {
  double g = 0.0;
  std::vector<cd> eigenvalues;
  CMatrix X;                        // row j: eigenfunction j in the Laplacian basis
  std::vector<double> self_product;  // |<v_j, v_j>| / ||x_j||^2 before rescaling
  std::vector<EigenFlags> flags;
  bool normalized = false;

  Eigen::Index size() const { return static_cast<Eigen::Index>(eigenvalues.size()); }
  bool any_flagged() const;
};

struct SpectrumOptions {
  double branch_threshold = 1e-6;
  double degeneracy_tol = 1e-8;
  bool balance = true;
};

// Dense non-symmetric eigensolve of Lambda + i g B; rows of X are left eigenvectors.
Spectrum diagonalize(const OperatorMatrices& mat, const CMatrix& B, double g, bool vectors = true,
                     bool balance = true);
std::vector<cd> eigenvalues_only(const OperatorMatrices& mat, const CMatrix& B, double g);

Spectrum normalize(Spectrum raw, const OperatorMatrices& mat, const SpectrumOptions& opt = {});
Spectrum compute_spectrum(const OperatorMatrices& mat, const CMatrix& B, double g,
                          const SpectrumOptions& opt = {});

// Bilinear products x^T W y using the signed permutation.
cd bilinear(const OperatorMatrices& mat, const CVector& x, const CVector& y);
CMatrix bilinear_gram(const OperatorMatrices& mat, const CMatrix& X);

struct PairResult {
  CVector a, b;
  Eigen::Matrix2cd T;  // new rows = T * old rows
  bool ok = false;
  bool stabilized = false;
};
// T with T C T^T = I for a complex symmetric 2x2 Gram C.
PairResult pair_transform(const Eigen::Matrix2cd& C);
PairResult orthogonalize_pair(const CVector& vj, const CVector& vk, const Eigen::Matrix2cd& C);

Spectrum spectrum_at_negative_g(const Spectrum& s, const OperatorMatrices& mat);

// max_j ||x_j (Lambda + i g B) - lambda_j x_j|| / ||Lambda + i g B||, rows scaled to unit norm.
double residual(const Spectrum& s, const OperatorMatrices& mat, const CMatrix& B);

}  // namespace btspec
