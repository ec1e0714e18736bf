// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "btspec/oracle.hpp"

#include <cmath>
#include <random>

#include "btspec/parallel.hpp"

namespace btspec {

void validate(const WalkConfig& c) {
  if (c.walkers < 1) throw DomainError("walkers must be >= 1");
  if (!(c.dt > 0)) throw DomainError("time step must be positive");
  if (!(std::sqrt(2.0 * c.dt) < 0.05 * c.R)) throw DomainError("time step too large: sqrt(2 dt) >= 0.05 R");
  if (c.t_bar < 0 || c.g_bar < 0) throw DomainError("negative pulse parameters");
  if (!(c.R > 0) || !(c.H > 0)) throw DomainError("domain lengths must be positive");
}

WalkResult mc_walk(const WalkConfig& cfg, bool keep_positions) {
  validate(cfg);
  const kernels::Table& K = cfg.kernel ? *cfg.kernel : kernels::active();
  kernels::WalkGeometry geo{cfg.domain, cfg.R, 0.5 * cfg.H * cfg.R};
  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.t_bar / cfg.dt - 1e-12)));
  const double dt = cfg.t_bar > 0 ? cfg.t_bar / steps : cfg.dt;
  const double sigma = std::sqrt(2.0 * dt);
  const double nrm = std::sqrt(cfg.direction[0] * cfg.direction[0] +
                               cfg.direction[1] * cfg.direction[1] +
                               cfg.direction[2] * cfg.direction[2]);
  const double e[3] = {cfg.direction[0] / nrm, cfg.direction[1] / nrm, cfg.direction[2] / nrm};
  const long nblocks = (cfg.walkers + cfg.block - 1) / cfg.block;

  struct Acc {
    double sc = 0, ss = 0, sc2 = 0, ss2 = 0;
  };
  std::vector<Acc> acc(nblocks);
  WalkResult res;
  res.steps = 2 * steps;
  if (keep_positions) res.positions.resize(cfg.walkers);

  parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
    const long first = static_cast<long>(b) * cfg.block;
    const std::size_t n = static_cast<std::size_t>(std::min(cfg.block, cfg.walkers - first));
    std::seed_seq sq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(b)};
    std::mt19937_64 rng(sq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> x(n), y(n), z(n), ph(n, 0.0), dx(n), dy(n), dz(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (cfg.domain == kernels::Domain::Free) {
        x[i] = y[i] = z[i] = 0.0;
        continue;
      }
      for (;;) {
        const double a = uni(rng), c = uni(rng), d = uni(rng);
        if (cfg.domain == kernels::Domain::Sphere && a * a + c * c + d * d > 1.0) continue;
        if (cfg.domain == kernels::Domain::Cylinder && a * a + c * c > 1.0) continue;
        x[i] = cfg.R * a;
        y[i] = cfg.R * c;
        z[i] = cfg.domain == kernels::Domain::Sphere ? cfg.R * d : geo.half_height * d;
        break;
      }
    }
    for (long s = 0; s < 2 * steps; ++s) {
      const double coef = (s < steps ? 1.0 : -1.0) * cfg.g_bar * dt * 0.5;
      for (std::size_t i = 0; i < n; ++i) {
        dx[i] = sigma * normal(rng);
        dy[i] = sigma * normal(rng);
        dz[i] = sigma * normal(rng);
      }
      K.walk(n, x.data(), y.data(), z.data(), ph.data(), dx.data(), dy.data(), dz.data(), geo, e,
             coef);
    }
    Acc a;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = std::cos(ph[i]), sn = -std::sin(ph[i]);
      a.sc += c;
      a.ss += sn;
      a.sc2 += c * c;
      a.ss2 += sn * sn;
      if (keep_positions) res.positions[first + i] = {x[i], y[i], z[i]};
    }
    acc[b] = a;
  }, cfg.threads);

  Acc t;
  for (const Acc& a : acc) {
    t.sc += a.sc;
    t.ss += a.ss;
    t.sc2 += a.sc2;
    t.ss2 += a.ss2;
  }
  const double n = static_cast<double>(cfg.walkers);
  const double mc = t.sc / n, ms = t.ss / n;
  const double vc = std::max(0.0, t.sc2 / n - mc * mc), vs = std::max(0.0, t.ss2 / n - ms * ms);
  res.S = cd(mc, ms);
  res.stderr_ = n > 1 ? std::sqrt((vc + vs) / (n - 1)) : 0.0;
  return res;
}

}  // namespace btspec
