// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include <benchmark/benchmark.h>

#include <pairsolve/dmrg.hpp>
#include <pairsolve/exactdiag.hpp>
#include <pairsolve/model.hpp>

using namespace pairsolve;

namespace {

PairingModel equally_spaced(std::size_t n, double g) {
  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = static_cast<double>(i + 1);
  return build_reduced_bcs(eps, g);
}

// One Hamiltonian-vector product in the half-filled sector.
void BM_ExactApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto model = equally_spaced(n, 0.5);
  const auto basis = PairBasis::enumerate(static_cast<unsigned>(n), static_cast<unsigned>(n / 2));
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd y(x.size());
  for (auto _ : state) {
    ed::apply(model, basis, {x.data(), static_cast<std::size_t>(x.size())},
              {y.data(), static_cast<std::size_t>(y.size())});
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_ExactApply)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ExactGround(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto model = equally_spaced(n, 0.5);
  const auto basis = PairBasis::enumerate(static_cast<unsigned>(n), static_cast<unsigned>(n / 2));
  ed::IterativeOptions opt;
  opt.want_vector = false;
  for (auto _ : state) benchmark::DoNotOptimize(ed::iterative_ground(model, basis, opt).energies[0]);
}
BENCHMARK(BM_ExactGround)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

// Superblock product at the last iteration of an N=2k run with m kept states.
void BM_SuperblockApply(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::size_t n = 40;
  const auto model = equally_spaced(n, 0.5);
  dmrg::DmrgConfig cfg;
  cfg.m = m;
  cfg.total_pairs = n / 2;
  dmrg::BlockState hole, particle;
  bool captured = false;
  // Grab the pre-truncation blocks of the final iteration.
  dmrg::run_infinite(model, cfg, [&](const dmrg::IterationView& v) {
    if (v.record.iteration == n / 2) {
      hole = v.hole;
      particle = v.particle;
      captured = true;
    }
  });
  if (!captured) {
    state.SkipWithError("no final iteration");
    return;
  }
  const dmrg::SuperblockHamiltonian h(hole, particle, model, n / 2);
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(h.dim());
  Eigen::VectorXd y(h.dim());
  for (auto _ : state) {
    h.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dim"] = static_cast<double>(h.dim());
}
BENCHMARK(BM_SuperblockApply)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DmrgRun(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto model = equally_spaced(n, 0.224);
  dmrg::DmrgConfig cfg;
  cfg.m = m;
  cfg.total_pairs = n / 2;
  for (auto _ : state) benchmark::DoNotOptimize(dmrg::run_infinite(model, cfg).final_energy);
}
BENCHMARK(BM_DmrgRun)->Args({32, 40})->Args({64, 100})->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
