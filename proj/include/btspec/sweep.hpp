// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "btspec/spectrum.hpp"

namespace btspec {

struct SweepPoint {
  double g = 0.0;
  std::vector<cd> eigenvalues;       // branch order, all N
  std::vector<double> self_product;  // branch order
  std::vector<int> perm;             // branch -> row of the solver output at this g
  std::vector<char> near_branch;     // branch order
  bool ambiguous = false;
  bool refined = false;  // inserted by step halving
  CMatrix X;             // tracked rows only, normalized, when requested
};

struct Ambiguity {
  double g = 0.0;
  int branch_a = -1, branch_b = -1;
  std::vector<int> chosen, alternative;  // candidate assignments (branch -> solver row)
};

struct SweepOptions {
  double g_max = 30.0;
  double step = 0.05;
  double min_step = 1e-5;
  int tracked = 17;
  bool keep_vectors = false;
  bool relabel_first_step = true;
  unsigned threads = 0;
  SpectrumOptions spectrum;
};

struct BranchSweep {
  std::vector<SweepPoint> points;
  int tracked = 0;
  std::vector<Ambiguity> ambiguities;
  std::vector<std::string> log;
  std::string tiebreak = "linear-extrapolation predictor, eigenvector overlap for displacement ties";
};

// Assignment of next rows to prev rows (prev in branch order). predicted defaults to
// prev eigenvalues. result[i] = row of next assigned to branch i.
std::vector<int> match_step(const Spectrum& prev, const Spectrum& next,
                            const std::vector<cd>* predicted = nullptr);

BranchSweep run_sweep(const OperatorMatrices& mat, const CMatrix& B, const SweepOptions& opt);

// Re-fix order within conjugate clusters of the first k entries: lower index gets Im > 0.
void order_conjugate_clusters(std::vector<cd>& ev, std::vector<int>& perm, int k, double tol = 1e-6);

}  // namespace btspec
