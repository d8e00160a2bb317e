// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <CLI11.hpp>

#include <pairsolve/errors.hpp>

#include "commands.hpp"
#include "output.hpp"

using namespace pairsolve::cli;

namespace {

void add_common(CLI::App* sub, CommonArgs& common, bool needs_model) {
  auto* model = sub->add_option("--model", common.model_path, "Model JSON file");
  if (needs_model) model->required();
  sub->add_option("--out", common.out, "Output path ('-' for stdout)");
  sub->add_option("--format", common.format, "Output format (default: csv for dmrg and sweep, json otherwise)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", common.seed, "Random seed");
  sub->add_option("--tol", common.tol, "Eigensolver residual tolerance (relative)");
  sub->add_flag("--no-timestamp", common.no_timestamp,
                "Omit timestamps and report wall_seconds as 0 for reproducible output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairsolve: exact diagonalization and DMRG for pairing Hamiltonians"};
  app.require_subcommand(1);

  CommonArgs common;
  BuildArgs build;
  EdArgs ed;
  DmrgArgs dmrg;
  CompareArgs compare;
  SweepArgs sweep;

  auto* b = app.add_subcommand("build", "Expand and validate a model, write general-model JSON");
  add_common(b, common, false);
  b->add_option("--family", build.family, "rational | trigonometric | hyperbolic");
  b->add_option("--g", build.g, "Integrable coupling g");
  b->add_option("--epsilon", build.epsilon, "Integrable level energies")->delimiter(',');
  b->add_option("--eta", build.eta, "Integrable eta parameters")->delimiter(',');
  b->add_option("--eps", build.eps, "Reduced-BCS level energies")->delimiter(',');
  b->add_option("--G", build.big_g, "Reduced-BCS pairing strength");

  auto* e = app.add_subcommand("ed", "Exact diagonalization in one pair sector");
  add_common(e, common, true);
  e->add_option("--pairs", ed.pairs, "Number of pairs M")->required();
  e->add_option("--k", ed.k, "Number of lowest energies (0: all, dense only)");
  e->add_option("--dense-threshold", ed.dense_threshold, "Largest dimension solved densely");
  e->add_option("--vector", ed.vector_out, "Write the ground vector as a JSON array");

  auto* d = app.add_subcommand("dmrg", "Infinite-algorithm DMRG ground state");
  add_common(d, common, true);
  d->add_option("--pairs", dmrg.pairs, "Number of pairs M")->required();
  d->add_option("--m", dmrg.m, "Kept block states");
  d->add_option("--level-order", dmrg.level_order, "eps (sorted) | given");
  d->add_option("--summary", dmrg.summary_out, "Write the summary JSON here");

  auto* c = app.add_subcommand("compare", "DMRG against exact diagonalization");
  add_common(c, common, true);
  c->add_option("--pairs", compare.pairs, "Number of pairs M")->required();
  c->add_option("--m", compare.m, "Kept block states");
  c->add_option("--dense-threshold", compare.dense_threshold, "Largest dimension solved densely");

  auto* s = app.add_subcommand("sweep", "DMRG convergence over a list of m values");
  add_common(s, common, true);
  s->add_option("--pairs", sweep.pairs, "Number of pairs M")->required();
  s->add_option("--m-list", sweep.m_list, "Ascending m values")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kValidation;
  }

  if (common.format.empty()) common.format = (d->parsed() || s->parsed()) ? "csv" : "json";

  try {
    if (b->parsed()) return common.command = "build", cmd_build(common, build);
    if (e->parsed()) return common.command = "ed", cmd_ed(common, ed);
    if (d->parsed()) return common.command = "dmrg", cmd_dmrg(common, dmrg);
    if (c->parsed()) return common.command = "compare", cmd_compare(common, compare);
    return common.command = "sweep", cmd_sweep(common, sweep);
  } catch (const pairsolve::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_code(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kSolverFailure;
  }
}
