// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
// usage: pairsolve_acceptance [CLI_BINARY GOLDEN_DIR]
// Criterion 10 needs the CLI path and golden directory; without them it fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include <pairsolve/dmrg.hpp>
#include <pairsolve/errors.hpp>
#include <pairsolve/exactdiag.hpp>
#include <pairsolve/model.hpp>

using namespace pairsolve;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> iota(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

dmrg::DmrgConfig config(std::size_t m, std::size_t pairs) {
  dmrg::DmrgConfig c;
  c.m = m;
  c.total_pairs = pairs;
  return c;
}

double dense_ground(const PairingModel& model, std::size_t pairs) {
  const auto basis = PairBasis::enumerate(static_cast<unsigned>(model.n_levels()),
                                          static_cast<unsigned>(pairs));
  return ed::dense_spectrum(model, basis, {basis.size(), false}).energies[0];
}

PairingModel random_general(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::VectorXd eps(d);
  Eigen::MatrixXd v1 = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd v2 = v1;
  for (Eigen::Index i = 0; i < d; ++i) {
    eps(i) = 3.0 * u(rng);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v1(i, j) = v1(j, i) = u(rng);
      v2(i, j) = v2(j, i) = 0.5 * u(rng);
    }
  }
  return build_general(eps, v1, v2);
}

IntegrableSpec random_spec(std::size_t n, FamilyKind family, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  IntegrableSpec spec;
  spec.family = family;
  spec.g = 0.6 * (u(rng) - 0.5);
  double e = 0.0;
  double h = 0.1 * u(rng);
  const double step = family == FamilyKind::trigonometric ? 2.5 / static_cast<double>(n) : 0.6;
  for (std::size_t i = 0; i < n; ++i) {
    e += 0.3 + u(rng);
    h += step * (0.4 + 0.6 * u(rng));
    spec.epsilon.push_back(e);
    spec.eta.push_back(h);
  }
  return spec;
}

// Runs of criteria 4-6, reused by 7 and 8.
std::vector<std::pair<std::string, dmrg::DmrgResult>> g_runs;

Outcome oracle_self_consistency() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  double worst = 0.0;
  std::size_t solves = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = size(rng);
    const auto model = t % 4 == 0 ? random_general(n, rng)
                                  : build_integrable(random_spec(n, static_cast<FamilyKind>(t % 4 - 1), rng));
    for (std::size_t pairs = 0; pairs <= n; ++pairs) {
      const auto basis = PairBasis::enumerate(static_cast<unsigned>(n), static_cast<unsigned>(pairs));
      const auto dense = ed::dense_spectrum(model, basis, {basis.size(), false});
      ed::IterativeOptions opt;
      opt.k = std::min<std::size_t>(3, basis.size());
      opt.tol = 1e-12;
      opt.seed = static_cast<std::uint64_t>(t);
      opt.want_vector = false;
      const auto it = ed::iterative_ground(model, basis, opt);
      for (std::size_t i = 0; i < opt.k; ++i) {
        const double ref = dense.energies[i];
        worst = std::max(worst, std::abs(it.energies[i] - ref) / std::max(1.0, std::abs(ref)));
      }
      ++solves;
    }
  }
  return {worst <= 1e-9, std::to_string(solves) + " sectors, worst rel diff " + sci(worst)};
}

Outcome integrable_reduction() {
  const std::size_t n = 8;
  const std::size_t pairs = 4;
  const double g = -0.3;
  const auto eps = iota(n);
  const auto integrable = build_integrable({FamilyKind::rational, g, eps, eps});
  Eigen::MatrixXd v1 = Eigen::MatrixXd::Constant(n, n, 2.0 * g);
  v1.diagonal().setZero();
  const auto plain = build_general(Eigen::Map<const Eigen::VectorXd>(eps.data(), n), v1,
                                   Eigen::MatrixXd::Zero(n, n));
  const auto basis = PairBasis::enumerate(n, pairs);
  const auto a = ed::dense_spectrum(integrable, basis, {basis.size(), false}).energies;
  const auto b = ed::dense_spectrum(plain, basis, {basis.size(), false}).energies;
  const double m = pairs;
  const double c = 2.0 * g * m * (m - 1.0) - 2.0 * g * m * (n - 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - (b[i] + c)));
  return {a.size() == 70 && worst <= 1e-9,
          std::to_string(a.size()) + " states, shift " + sci(c) + ", max abs diff " + sci(worst)};
}

Outcome kernel_closed_forms() {
  const double pi = std::numbers::pi;
  struct Row {
    bool cot;
    FamilyKind f;
    double de, dh, expect;
  };
  const Row table[] = {
      {true, FamilyKind::rational, 2.0, 4.0, 0.5},
      {true, FamilyKind::trigonometric, 1.0, pi / 4, 1.0},
      {true, FamilyKind::hyperbolic, 1.0, std::log(3.0), 1.25},
      {false, FamilyKind::rational, 3.0, 2.0, 1.5},
      {false, FamilyKind::trigonometric, 1.0, pi / 6, 2.0},
      {false, FamilyKind::hyperbolic, 1.0, std::log(3.0), 0.75},
  };
  double worst = 0.0;
  for (const auto& r : table) {
    const double got = r.cot ? cot_kernel(r.f, r.de, r.dh) : sin_kernel(r.f, r.de, r.dh);
    worst = std::max(worst, std::abs(got - r.expect) / std::abs(r.expect));
  }
  std::mt19937_64 rng(10000);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::size_t checked = 0;
  bool even = true;
  while (checked < 10000) {
    const double de = u(rng);
    const double dh = u(rng);
    if (std::abs(dh) < 1e-3 || std::abs(std::sin(dh)) < 1e-3) continue;
    for (auto f : {FamilyKind::rational, FamilyKind::trigonometric, FamilyKind::hyperbolic}) {
      even = even && cot_kernel(f, de, dh) == cot_kernel(f, -de, -dh) &&
             sin_kernel(f, de, dh) == sin_kernel(f, -de, -dh);
    }
    ++checked;
  }
  return {worst <= 1e-14 && even,
          "table worst rel " + sci(worst) + ", evenness on " + std::to_string(checked) + " inputs"};
}

Outcome dmrg_exactness() {
  double worst = 0.0;
  for (std::size_t n = 4; n <= 8; n += 2) {
    const auto model = build_reduced_bcs(iota(n), 0.5);
    const std::size_t m = std::size_t{1} << (n / 2);
    auto r = dmrg::run_infinite(model, config(m, n / 2));
    const double ref = dense_ground(model, n / 2);
    worst = std::max(worst, std::abs(r.final_energy - ref));
    g_runs.emplace_back("N=" + std::to_string(n) + " m=" + std::to_string(m), std::move(r));
  }
  return {worst <= 1e-9, "N=4,6,8 max |E_DMRG - E_ED| " + sci(worst)};
}

Outcome dmrg_desk_scale() {
  const auto model = build_reduced_bcs(iota(16), 0.5);
  const auto basis = PairBasis::enumerate(16, 8);
  ed::IterativeOptions opt;
  opt.tol = 1e-12;
  opt.want_vector = false;
  const double exact = ed::iterative_ground(model, basis, opt).energies[0];
  std::vector<double> errs;
  std::string detail;
  for (std::size_t m : {8, 16, 32, 64}) {
    auto r = dmrg::run_infinite(model, config(m, 8));
    errs.push_back(std::abs(r.final_energy - exact) / std::abs(exact));
    detail += "m=" + std::to_string(m) + ":" + sci(errs.back()) + " ";
    g_runs.emplace_back("N=16 m=" + std::to_string(m), std::move(r));
  }
  bool trend = true;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    // 10% slack per step; an absolute floor absorbs eigensolver noise once converged.
    trend = trend && errs[i] <= 1.1 * errs[i - 1] + 1e-12;
  }
  return {errs.back() <= 1e-6 && trend, "rel err " + detail};
}

Outcome n100_self_convergence(double g, bool record) {
  const auto model = build_reduced_bcs(iota(100), g);
  const auto start = std::chrono::steady_clock::now();
  auto r96 = dmrg::run_infinite(model, config(96, 50));
  auto r128 = dmrg::run_infinite(model, config(128, 50));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double rel = std::abs(r128.final_energy - r96.final_energy) / std::abs(r128.final_energy);
  char e[64];
  std::snprintf(e, sizeof e, "%.12f", r128.final_energy);
  std::string detail = "G=" + sci(g) + " E(128)=" + e + " rel(96,128)=" + sci(rel) + " in " +
                       sci(secs) + " s";
  if (record) {
    g_runs.emplace_back("N=100 m=96", std::move(r96));
    g_runs.emplace_back("N=100 m=128", std::move(r128));
  }
  return {rel <= 1e-7, detail};
}

Outcome iteration_count() {
  std::string detail;
  bool ok = true;
  bool saw[101] = {};
  for (const auto& [name, r] : g_runs) {
    ok = ok && r.iterations.size() == r.n_levels / 2;
    saw[r.n_levels] = true;
  }
  ok = ok && saw[4] && saw[8] && saw[16] && saw[100];
  return {ok, std::to_string(g_runs.size()) + " runs over N in {4,6,8,16,100}, iterations == N/2"};
}

Outcome memory_bound() {
  bool ok = !g_runs.empty();
  double worst = 0.0;
  for (const auto& [name, r] : g_runs) {
    const auto rep = dmrg::memory_report(r);
    ok = ok && rep.within_bound;
    worst = std::max(worst, static_cast<double>(rep.peak.block_operator_entries()) /
                                static_cast<double>(rep.block_operator_bound));
  }
  return {ok, "peak block-operator entries / 3 m^2 N <= " + sci(worst)};
}

Outcome structural_invariants() {
  std::mt19937_64 rng(9);
  bool ok = true;
  std::size_t checks = 0;
  std::string why;
  const auto fail = [&](const std::string& what) {
    if (ok) why = what;
    ok = false;
  };

  for (int t = 0; t < 200; ++t) {
    const auto model = build_integrable(random_spec(2 + t % 9, static_cast<FamilyKind>(t % 3), rng));
    if (model.v1 != model.v1.transpose() || model.v2 != model.v2.transpose() ||
        model.v1.diagonal().any() || model.v2.diagonal().any()) {
      fail("non-Hermitian generated model");
    }
    ++checks;
  }

  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 4 + 2 * static_cast<std::size_t>(t % 4);
    const auto model = t % 2 ? random_general(n, rng)
                             : build_integrable(random_spec(n, static_cast<FamilyKind>(t % 3), rng));
    const std::size_t pairs = 1 + static_cast<std::size_t>(t) % (n - 1);
    const std::size_t m = 2 + static_cast<std::size_t>(t % 5);
    const auto observer = [&](const dmrg::IterationView& v) {
      ++checks;
      if (v.psi.target() != v.record.target_pairs) fail("psi outside the target sector");
      Eigen::Index sector_dim = 0;
      for (std::size_t p = 0; p < v.hole.n_sectors(); ++p) {
        const std::size_t q = v.record.target_pairs - p;
        if (p <= v.record.target_pairs && q < v.particle.n_sectors()) {
          sector_dim += v.hole.sector_dims[p] * v.particle.sector_dims[q];
        }
      }
      if (sector_dim != v.psi.size()) fail("superblock layout leaves the pair sector");
      for (const auto* rho : {&v.rho_hole, &v.rho_particle}) {
        if (std::abs(rho->trace() - 1.0) > 1e-12) fail("rho trace");
        for (const auto& s : rho->sectors) {
          if (s.size() == 0) continue;
          if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12) fail("rho symmetry");
          if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues().minCoeff() < -1e-12) {
            fail("rho PSD");
          }
        }
      }
      for (double w : {v.record.trunc_weight_hole, v.record.trunc_weight_particle}) {
        if (!(w >= 0.0 && w <= 1.0)) fail("truncation weight outside [0,1]");
      }
    };
    const auto r = dmrg::run_infinite(model, config(m, pairs), observer);
    if (r.final_energy < dense_ground(model, pairs) - 1e-9) fail("variational bound");
  }
  return {ok, ok ? std::to_string(checks) + " checks" : "violated: " + why};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_contract(const std::string& cli, const fs::path& golden) {
  if (cli.empty() || !fs::exists(cli) || !fs::is_directory(golden)) {
    return {false, "CLI binary or golden directory not supplied"};
  }
  struct Case {
    std::string file;
    std::string args;
  };
  const std::vector<Case> cases = {
      {"build.json", "build --eps 1,2,3,4 --G 0.5"},
      {"ed.json", "ed --model toy4.json --pairs 2 --k 0 --no-timestamp"},
      {"dmrg.csv", "dmrg --model toy4.json --pairs 2 --m 8 --no-timestamp"},
      {"compare.json", "compare --model toy4.json --pairs 2 --m 8 --no-timestamp"},
      {"sweep.csv", "sweep --model toy4.json --pairs 2 --m-list 2,3,4,8 --no-timestamp"},
  };
  const fs::path scratch = fs::temp_directory_path() / ("pairsolve_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);
  const auto cwd = fs::current_path();
  fs::current_path(golden);
  std::string bad;
  for (const auto& c : cases) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const auto out = scratch / (std::to_string(run) + "_" + c.file);
      const std::string cmd = "\"" + cli + "\" " + c.args + " --out \"" + out.string() + "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) bad += c.file + "(exit) ";
      const auto text = read_file(out);
      if (run == 0) first = text;
      else if (text != first) bad += c.file + "(nondeterministic) ";
    }
    if (first != read_file(golden / c.file)) bad += c.file + "(golden) ";
  }
  // The golden spectrum must also agree with the independent numpy oracle.
  const std::vector<double> oracle{5.635548473575597,  7.935381426690867,  9.999999999999998,
                                   10.000000000000004, 12.208940239171435, 14.220129860562105};
  const auto ed = nlohmann::json::parse(read_file(golden / "ed.json"));
  const auto energies = ed["energies"].get<std::vector<double>>();
  double worst = energies.size() == oracle.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(energies.size(), oracle.size()); ++i) {
    worst = std::max(worst, std::abs(energies[i] - oracle[i]));
  }
  if (worst > 1e-12) bad += "ed.json(oracle) ";
  fs::current_path(cwd);
  fs::remove_all(scratch);
  return {bad.empty(), bad.empty() ? "5 commands byte-identical across runs and to golden files"
                                   : "mismatch: " + bad};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? fs::absolute(argv[1]).string() : "";
  const fs::path golden = argc > 2 ? fs::absolute(argv[2]) : fs::path();

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle self-consistency", oracle_self_consistency},
      {2, "integrable to reduced-BCS mapping", integrable_reduction},
      {3, "kernel closed forms and evenness", kernel_closed_forms},
      {4, "DMRG exact without truncation", dmrg_exactness},
      {5, "DMRG accuracy N=16", dmrg_desk_scale},
      {6, "self-convergence N=100", [] { return n100_self_convergence(0.224, true); }},
      {7, "iteration count N/2", iteration_count},
      {8, "memory bound 3 m^2 N", memory_bound},
      {9, "structural invariants", structural_invariants},
      {10, "CLI golden files", [&] { return cli_contract(cli, golden); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }

  // Not gating: the same check at a stronger coupling, where fixed-sector
  // growth converges more slowly in m.
  const auto note = n100_self_convergence(0.5, false);
  std::printf("NOTE criterion 6 at G=0.5 (informational): %s\n", note.detail.c_str());
  return failures == 0 ? 0 : 1;
}
