// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "btspec/branchpoints.hpp"
#include "btspec/fieldmap.hpp"
#include "btspec/matrices.hpp"
#include "btspec/oracle.hpp"
#include "btspec/signal.hpp"
#include "btspec/sweep.hpp"

namespace btspec::cli {

namespace {

using nlohmann::json;

constexpr double kDeg = kPi / 180.0;

std::string join(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path);
  return f;
}

OperatorMatrices build_matrices(const RunConfig& cfg) {
  const double aspect = cfg.H_um / cfg.R_um;
  return assemble(build_basis(cfg.geom(), cfg.N, 1.0, aspect));
}

std::array<double, 3> direction(const RunConfig& cfg) {
  switch (cfg.geom()) {
    case Geometry::Sphere: {
      const double t = cfg.theta_deg * kDeg, p = cfg.phi_deg * kDeg;
      return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
    }
    case Geometry::Cylinder: {
      const double e = cfg.eta_deg * kDeg;
      return {std::cos(e), 0.0, std::sin(e)};
    }
    case Geometry::Disk: return {1.0, 0.0, 0.0};
    case Geometry::ReducedSphere:
    case Geometry::Interval: return {0.0, 0.0, 1.0};
  }
  return {0.0, 0.0, 1.0};
}

CMatrix gradient(const OperatorMatrices& mat, const RunConfig& cfg) {
  switch (cfg.geom()) {
    case Geometry::Sphere:
      return gradient_matrix_sphere(mat, cfg.theta_deg * kDeg, cfg.phi_deg * kDeg);
    case Geometry::Cylinder: return gradient_matrix_cylinder(mat, cfg.eta_deg * kDeg);
    default: return gradient_matrix(mat, direction(cfg));
  }
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

std::string g_tag(double g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", g);
  return buf;
}

}  // namespace

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string output_dir(const RunConfig& cfg) {
  const char* env = std::getenv(kOutputDirEnv);
  if (env && *env) return env;
  return cfg.output_dir;
}

json branchpoint_to_json(const BranchPoint& bp) {
  json j;
  j["g_star"] = bp.g_star;
  j["order"] = bp.order;
  std::vector<int> b;
  for (int i : bp.branches) b.push_back(i + 1);
  j["branches"] = b;
  j["bracket"] = json::array({bp.bracket_lo, bp.bracket_hi});
  j["center"] = bp.center;
  j["gap_min"] = bp.gap_min;
  j["self_product_min"] = bp.self_product_min;
  j["principal_angle"] = bp.principal_angle;
  j["order_unexpected"] = bp.order_unexpected;
  j["refined"] = bp.refined;
  return j;
}

BranchPoint branchpoint_from_json(const json& j) {
  BranchPoint bp;
  bp.g_star = j.at("g_star").get<double>();
  bp.order = j.at("order").get<int>();
  for (int i : j.at("branches").get<std::vector<int>>()) bp.branches.push_back(i - 1);
  bp.bracket_lo = j.at("bracket").at(0).get<double>();
  bp.bracket_hi = j.at("bracket").at(1).get<double>();
  bp.center = j.at("center").get<double>();
  bp.gap_min = j.at("gap_min").get<double>();
  bp.self_product_min = j.at("self_product_min").get<double>();
  bp.principal_angle = j.at("principal_angle").get<double>();
  bp.order_unexpected = j.at("order_unexpected").get<bool>();
  bp.refined = j.at("refined").get<bool>();
  return bp;
}

std::vector<std::string> cmd_sweep(const RunConfig& cfg) {
  validate(cfg);
  if (!(cfg.g_max > 0)) throw ConfigError("empty gradient range: g_max must be positive");
  const OperatorMatrices mat = build_matrices(cfg);
  const CMatrix B = gradient(mat, cfg);
  SweepOptions so;
  so.g_max = cfg.g_max;
  so.step = cfg.g_step;
  so.tracked = std::min<int>(cfg.tracked, static_cast<int>(mat.size()));
  so.threads = cfg.threads;
  const BranchSweep sw = run_sweep(mat, B, so);
  BranchPointOptions bo;
  bo.threads = cfg.threads;
  const std::vector<BranchPoint> bps = find_branch_points(mat, B, sw, bo);

  const std::string dir = output_dir(cfg);
  const std::string csv = join(dir, "branches.csv");
  {
    std::ofstream f = open_out(csv);
    f << "g,branch_j,re_lambda,im_lambda,flags\n";
    for (const SweepPoint& p : sw.points)
      for (int j = 0; j < sw.tracked; ++j) {
        int flags = 0;
        if (!p.near_branch.empty() && p.near_branch[j]) flags |= 1;
        if (p.ambiguous) flags |= 2;
        if (p.refined) flags |= 4;
        f << fmt(p.g) << ',' << j + 1 << ',' << fmt(p.eigenvalues[j].real()) << ','
          << fmt(p.eigenvalues[j].imag()) << ',' << flags << '\n';
      }
  }
  const std::string js = join(dir, "branchpoints.json");
  {
    json out;
    out["config"] = to_json(cfg);
    out["tiebreak"] = sw.tiebreak;
    json arr = json::array();
    for (const BranchPoint& bp : bps) arr.push_back(branchpoint_to_json(bp));
    out["branch_points"] = arr;
    json amb = json::array();
    for (const Ambiguity& a : sw.ambiguities)
      amb.push_back({{"g", a.g}, {"branches", json::array({a.branch_a + 1, a.branch_b + 1})}});
    out["ambiguities"] = amb;
    if (cfg.geom() == Geometry::Interval) out["analytic"] = interval_branch_points_analytic(2);
    std::ofstream f = open_out(js);
    f << out.dump(2) << '\n';
  }
  return {csv, js};
}

std::vector<std::string> cmd_signal(const RunConfig& cfg) {
  validate(cfg);
  const std::vector<double> ts = cfg.times_bar();
  if (ts.empty()) throw ConfigError("empty pulse duration list");
  const double g = cfg.gradient_bar();
  const OperatorMatrices mat = build_matrices(cfg);
  const CMatrix B = gradient(mat, cfg);

  const std::vector<cd> sm = signal_matrix(mat, B, g, ts);
  const Spectrum plus = compute_spectrum(mat, B, g);
  const Spectrum minus = compute_spectrum(mat, B, -g);
  const SignalCoefficients cc = compute_coefficients(plus, minus, mat);
  const SignalCoefficients c1 = compute_coefficients(plus, mat);
  const LowModes lm = low_modes(plus);
  const cd l1 = plus.eigenvalues[lm.first];
  const bool real_l1 = std::abs(l1.imag()) <= 1e-9;

  kernels::Domain dom = kernels::Domain::Free;
  bool mc = cfg.walkers > 0;
  switch (cfg.geom()) {
    case Geometry::Sphere:
    case Geometry::ReducedSphere: dom = kernels::Domain::Sphere; break;
    case Geometry::Cylinder: dom = kernels::Domain::Cylinder; break;
    default: mc = false;
  }

  const std::string path = join(output_dir(cfg), "signal.csv");
  std::ofstream f = open_out(path);
  f << "delta,S_matrix_re,S_matrix_im,S_spectral_re,S_spectral_im,S_onemode,S_twomode_re,"
       "S_twomode_im,S_mc_re,S_mc_im,mc_stderr\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double delta = cfg.si_times() ? cfg.deltas_ms[i] * 1e-3 : t;
    const cd ss = signal_spectral(plus, minus, cc, t);
    f << fmt(delta) << ',' << fmt(sm[i].real()) << ',' << fmt(sm[i].imag()) << ','
      << fmt(ss.real()) << ',' << fmt(ss.imag()) << ',';
    if (real_l1) f << fmt(signal_one_mode(l1.real(), c1.C(lm.first, lm.first).real(), t));
    f << ',';
    if (!real_l1 && lm.complex_pair) {
      const double s2 = signal_two_mode(l1, c1.C(lm.first, lm.first).real(),
                                        c1.C(lm.first, lm.second), t);
      f << fmt(s2) << ',' << fmt(0.0);
    } else {
      f << ',';
    }
    f << ',';
    if (mc) {
      WalkConfig wc;
      wc.domain = dom;
      wc.R = 1.0;
      wc.H = cfg.H_um / cfg.R_um;
      wc.walkers = cfg.walkers;
      wc.dt = cfg.mc_dt;
      wc.g_bar = g;
      wc.t_bar = t;
      wc.direction = direction(cfg);
      wc.seed = cfg.seed;
      wc.threads = cfg.threads;
      const WalkResult r = mc_signal(wc);
      f << fmt(r.S.real()) << ',' << fmt(r.S.imag()) << ',' << fmt(r.stderr_);
    } else {
      f << ",,";
    }
    f << '\n';
  }
  return {path};
}

std::vector<std::string> cmd_fieldmap(const RunConfig& cfg, int j, double g) {
  validate(cfg);
  if (j < 1) throw ConfigError("branch index j must be >= 1");
  if (!(g >= 0)) throw ConfigError("fieldmap gradient must be >= 0");
  const OperatorMatrices mat = build_matrices(cfg);
  if (j > mat.size())
    throw DomainError("branch index " + std::to_string(j) + " exceeds truncation N = " +
                      std::to_string(mat.size()));
  const CMatrix B = gradient(mat, cfg);
  CVector row = CVector::Zero(mat.size());
  cd lambda = mat.lambda[j - 1];
  double self_product = 1.0;
  bool near_bp = false;
  if (g > 0) {
    SweepOptions so;
    so.g_max = g;
    so.step = std::min(cfg.g_step, g);
    so.tracked = std::max(j, std::min<int>(cfg.tracked, static_cast<int>(mat.size())));
    so.keep_vectors = true;
    so.threads = cfg.threads;
    const BranchSweep sw = run_sweep(mat, B, so);
    const SweepPoint& p = sw.points.back();
    row = p.X.row(j - 1).transpose();
    lambda = p.eigenvalues[j - 1];
    self_product = p.self_product[j - 1];
    near_bp = !p.near_branch.empty() && p.near_branch[j - 1];
  } else {
    row[j - 1] = 1.0;
  }
  const FieldGrid grid = export_projection(row, mat.basis, j - 1, g, cfg.resolution, cfg.resolution);

  const std::string dir = output_dir(cfg);
  const std::string stem = "field_j" + std::to_string(j) + "_g" + g_tag(g);
  const std::string csv = join(dir, stem + ".csv");
  {
    std::ofstream f = open_out(csv);
    f << "x,z,re_v,im_v,inside_flag\n";
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      const bool in = grid.inside_mask[i];
      f << fmt(grid.x[i]) << ',' << fmt(grid.z[i]) << ',';
      if (in) f << fmt(grid.values[i].real()) << ',' << fmt(grid.values[i].imag());
      else f << ',';
      f << ',' << (in ? 1 : 0) << '\n';
    }
  }
  const std::string js = join(dir, stem + ".json");
  {
    json out;
    out["config"] = to_json(cfg);
    out["j"] = j;
    out["g"] = g;
    out["lambda"] = complex_json(lambda);
    out["self_product"] = self_product;
    out["near_branch_point"] = near_bp;
    out["normalized"] = !near_bp;
    out["nx"] = grid.nx;
    out["nz"] = grid.nz;
    std::ofstream f = open_out(js);
    f << out.dump(2) << '\n';
  }
  return {csv, js};
}

std::vector<std::string> cmd_dump(const RunConfig& cfg) {
  validate(cfg);
  const OperatorMatrices mat = build_matrices(cfg);
  const std::string path = join(output_dir(cfg), "matrices.bin");
  write_matrices(path, mat);
  return {path};
}

int run(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  std::vector<std::string> copy = args;
  for (auto& s : copy) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
  CLI::App app{"Spectral analysis of the Bloch-Torrey operator"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::map<std::string, std::string> overrides;
  app.add_option("--config", config_path, "Configuration file (key = value)");
  app.add_option("--out", out_dir, "Output directory");
  for (const std::string& k : config_keys()) {
    if (k == "output_dir") continue;
    app.add_option_function<std::string>(
        "--" + k, [&overrides, k](const std::string& v) { overrides[k] = v; }, "Override " + k);
  }
  app.fallthrough();
  auto* sweep = app.add_subcommand("sweep", "Track eigenvalue branches and locate branch points");
  auto* signal = app.add_subcommand("signal", "Signal curves for a list of pulse durations");
  auto* field = app.add_subcommand("fieldmap", "Eigenfunction xz projection");
  auto* dump = app.add_subcommand("dump", "Write the operator matrices");
  int fj = 1;
  double fg = 0.0;
  field->add_option("--j", fj, "Branch index (1-based)");
  field->add_option("--g", fg, "Gradient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
    for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    std::vector<std::string> files;
    if (*sweep) files = cmd_sweep(cfg);
    else if (*signal) files = cmd_signal(cfg);
    else if (*field)
      files = cmd_fieldmap(cfg, field->count("--j") ? fj : cfg.field_j,
                           field->count("--g") ? fg : cfg.field_g);
    else if (*dump) files = cmd_dump(cfg);
    for (const auto& p : files) std::cout << p << '\n';
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n' << app.help();
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace btspec::cli
