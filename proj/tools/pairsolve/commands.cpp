// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include <pairsolve/basis.hpp>
#include <pairsolve/dmrg.hpp>
#include <pairsolve/errors.hpp>
#include <pairsolve/exactdiag.hpp>
#include <pairsolve/model.hpp>
#include <pairsolve/model_io.hpp>

#include "output.hpp"

namespace pairsolve::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kMaxSigFigs = 16;

void check_paths(const CommonArgs& common) {
  if (!common.model_path.empty() && !std::filesystem::exists(common.model_path)) {
    throw Error(ErrorKind::InvalidArgument, "model file not found: " + common.model_path);
  }
  if (!common.out.empty() && common.out != "-") {
    const auto dir = std::filesystem::path(common.out).parent_path();
    if (!dir.empty() && !std::filesystem::is_directory(dir)) {
      throw Error(ErrorKind::InvalidArgument, "output directory does not exist: " + dir.string());
    }
  }
  if (common.format != "json" && common.format != "csv") {
    throw Error(ErrorKind::InvalidArgument, "--format must be csv or json");
  }
}

PairingModel load_expanded(const CommonArgs& common) {
  if (common.model_path.empty()) throw Error(ErrorKind::InvalidArgument, "--model is required");
  return expand(load_model_file(common.model_path));
}

json manifest(const CommonArgs& common) {
  json m;
  m["command"] = common.command;
  m["model_path"] = common.model_path;
  m["seed"] = common.seed;
  m["format"] = common.format;
  if (!common.no_timestamp) m["timestamp"] = utc_timestamp();
  return m;
}

double seconds_since(Clock::time_point start, const CommonArgs& common) {
  if (common.no_timestamp) return 0.0;
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void warn_if_free(const PairingModel& model) {
  if (model.non_interacting()) std::cerr << "warning: non-interacting model\n";
}

dmrg::DmrgConfig dmrg_config(const CommonArgs& common, std::size_t m, std::size_t pairs) {
  dmrg::DmrgConfig cfg;
  cfg.m = m;
  cfg.total_pairs = pairs;
  cfg.seed = common.seed;
  cfg.superblock_tol = common.tol.value_or(cfg.superblock_tol);
  return cfg;
}

double max_trunc_weight(const dmrg::DmrgResult& r) {
  double w = 0.0;
  for (const auto& it : r.iterations) {
    w = std::max({w, it.trunc_weight_hole, it.trunc_weight_particle});
  }
  return w;
}

ed::SpectrumResult solve_exact(const PairingModel& model, const PairBasis& basis, std::size_t k,
                               std::size_t dense_threshold, double tol, std::uint64_t seed) {
  if (basis.size() <= dense_threshold) {
    auto r = ed::dense_spectrum(model, basis, {dense_threshold, false});
    if (k > 0 && k < r.energies.size()) r.energies.resize(k);
    return r;
  }
  ed::IterativeOptions opt;
  opt.k = std::max<std::size_t>(k, 1);
  opt.tol = tol;
  opt.seed = seed;
  opt.want_vector = false;
  return ed::iterative_ground(model, basis, opt);
}

PairBasis enumerate_or_explain(std::size_t n, std::size_t pairs) {
  try {
    return PairBasis::enumerate(static_cast<unsigned>(n), static_cast<unsigned>(pairs));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TooLarge) {
      std::cerr << "hint: exact diagonalization cannot hold this sector; use `pairsolve dmrg`\n";
    }
    throw;
  }
}

}  // namespace

int cmd_build(const CommonArgs& common, const BuildArgs& args) {
  check_paths(common);
  const bool integrable = !args.family.empty() || args.g || !args.epsilon.empty() || !args.eta.empty();
  const bool bcs = !args.eps.empty() || args.big_g;
  const int sources = int(integrable) + int(bcs) + int(!common.model_path.empty());
  if (sources != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "give exactly one of --model, integrable flags (--family --g --epsilon --eta) "
                "or reduced-BCS flags (--eps --G)");
  }

  PairingModel model;
  if (!common.model_path.empty()) {
    model = load_expanded(common);
  } else if (bcs) {
    if (args.eps.empty() || !args.big_g) throw Error(ErrorKind::InvalidArgument, "--eps and --G are both required");
    model = build_reduced_bcs(args.eps, *args.big_g);
  } else {
    if (args.family.empty() || !args.g) {
      throw Error(ErrorKind::InvalidArgument, "--family and --g are required");
    }
    const auto family = parse_family(args.family);
    if (!family) throw Error(ErrorKind::InvalidArgument, "unknown family: " + args.family);
    IntegrableSpec spec{*family, *args.g, args.epsilon, args.eta};
    try {
      model = build_integrable(spec);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidArgument) throw;
      throw Error(ErrorKind::InvariantViolation, e.what());
    }
  }

  const std::size_t n = model.n_levels();
  std::cerr << "n_levels: " << n << "\n"
            << "parameters: general " << param_count(ParamCountKind::general, n)
            << ", integrable (one family) " << param_count(ParamCountKind::integrable_single, n)
            << ", integrable (three families) "
            << param_count(ParamCountKind::integrable_all_families, n) << "\n"
            << "invariants: finite ok, symmetric ok, zero diagonal ok\n";
  warn_if_free(model);
  write_output(common.out, save_model(model));
  return kOk;
}

int cmd_ed(const CommonArgs& common, const EdArgs& args) {
  check_paths(common);
  const auto start = Clock::now();
  const auto model = load_expanded(common);
  warn_if_free(model);
  const auto basis = enumerate_or_explain(model.n_levels(), args.pairs);
  const auto r = solve_exact(model, basis, args.k, args.dense_threshold, common.tol.value_or(1e-10),
                             common.seed);

  if (!args.vector_out.empty()) {
    ed::IterativeOptions opt;
    opt.tol = common.tol.value_or(1e-10);
    opt.seed = common.seed;
    opt.dense_fallback = args.dense_threshold;
    const auto g = ed::iterative_ground(model, basis, opt);
    json v = json::array();
    for (double x : *g.ground_vector) v.push_back(x);
    write_output(args.vector_out, v.dump() + "\n");
  }

  if (common.format == "csv") {
    std::ostringstream out;
    out << "index,energy\n";
    for (std::size_t i = 0; i < r.energies.size(); ++i) out << i << ',' << format_double(r.energies[i]) << '\n';
    write_output(common.out, out.str());
    return kOk;
  }
  json doc;
  doc["energies"] = r.energies;
  doc["residual"] = r.residual;
  doc["method"] = std::string(ed::to_string(r.method));
  doc["n_levels"] = model.n_levels();
  doc["n_pairs"] = args.pairs;
  doc["dimension"] = basis.size();
  doc["operator_applies"] = r.operator_applies;
  doc["wall_seconds"] = seconds_since(start, common);
  doc["manifest"] = manifest(common);
  write_output(common.out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_dmrg(const CommonArgs& common, const DmrgArgs& args) {
  check_paths(common);
  const auto model = load_expanded(common);
  warn_if_free(model);
  auto cfg = dmrg_config(common, args.m, args.pairs);
  if (args.level_order == "given") {
    cfg.level_order = dmrg::LevelOrder::as_given;
  } else if (args.level_order != "eps") {
    throw Error(ErrorKind::InvalidArgument, "--level-order must be eps or given");
  }
  auto r = dmrg::run_infinite(model, cfg);
  if (common.no_timestamp) r.wall_seconds = 0.0;
  const auto mem = dmrg::memory_report(r);

  json summary;
  summary["final_energy"] = r.final_energy;
  summary["m"] = r.m;
  summary["n_levels"] = r.n_levels;
  summary["total_pairs"] = r.total_pairs;
  summary["iterations"] = r.iterations.size();
  summary["memory_peak_entries"] = r.memory_peak_entries;
  summary["wall_seconds"] = r.wall_seconds;
  summary["memory_block_operator_bound"] = mem.block_operator_bound;
  summary["memory_within_bound"] = mem.within_bound;
  summary["workspace_peak_entries"] = r.workspace_peak_entries;
  summary["level_order"] = std::string(dmrg::to_string(cfg.level_order));
  summary["manifest"] = manifest(common);

  if (!args.summary_out.empty()) write_output(args.summary_out, summary.dump(2) + "\n");
  if (common.format == "json") {
    json history = json::array();
    for (const auto& it : r.iterations) {
      history.push_back({{"iteration", it.iteration},
                         {"levels_in_superblock", it.superblock_levels},
                         {"target_pairs", it.target_pairs},
                         {"E0", it.energy},
                         {"trunc_weight_hole", it.trunc_weight_hole},
                         {"trunc_weight_particle", it.trunc_weight_particle},
                         {"dim_hole", it.dim_hole},
                         {"dim_particle", it.dim_particle}});
    }
    summary["history"] = std::move(history);
    write_output(common.out, summary.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream out;
  out << "iteration,levels_in_superblock,target_pairs,E0,trunc_weight_hole,trunc_weight_particle,"
         "dim_hole,dim_particle\n";
  for (const auto& it : r.iterations) {
    out << it.iteration << ',' << it.superblock_levels << ',' << it.target_pairs << ','
        << format_double(it.energy) << ',' << format_double(it.trunc_weight_hole) << ','
        << format_double(it.trunc_weight_particle) << ',' << it.dim_hole << ',' << it.dim_particle
        << '\n';
  }
  write_output(common.out, out.str());
  return kOk;
}

int cmd_compare(const CommonArgs& common, const CompareArgs& args) {
  check_paths(common);
  const auto model = load_expanded(common);
  warn_if_free(model);
  const double tol = common.tol.value_or(1e-11);
  const auto basis = enumerate_or_explain(model.n_levels(), args.pairs);
  const auto exact = solve_exact(model, basis, 1, args.dense_threshold, tol, common.seed);
  const auto approx = dmrg::run_infinite(model, dmrg_config(common, args.m, args.pairs));

  const double e_ed = exact.energies[0];
  const double e_dmrg = approx.final_energy;
  const double abs_err = std::abs(e_dmrg - e_ed);
  const double rel_err = e_ed != 0.0 ? abs_err / std::abs(e_ed) : abs_err;
  const int sig_figs =
      rel_err > 0.0 ? std::clamp(static_cast<int>(std::floor(-std::log10(rel_err))), 0, kMaxSigFigs)
                    : kMaxSigFigs;

  if (common.format == "csv") {
    std::ostringstream out;
    out << "n_levels,n_pairs,m,E_ED,E_DMRG,abs_error,rel_error,sig_figs,ed_method\n"
        << model.n_levels() << ',' << args.pairs << ',' << args.m << ',' << format_double(e_ed) << ','
        << format_double(e_dmrg) << ',' << format_double(abs_err) << ',' << format_double(rel_err)
        << ',' << sig_figs << ',' << ed::to_string(exact.method) << '\n';
    write_output(common.out, out.str());
    return kOk;
  }
  json doc;
  doc["n_levels"] = model.n_levels();
  doc["n_pairs"] = args.pairs;
  doc["m"] = args.m;
  doc["E_ED"] = e_ed;
  doc["E_DMRG"] = e_dmrg;
  doc["abs_error"] = abs_err;
  doc["rel_error"] = rel_err;
  doc["sig_figs"] = sig_figs;
  doc["ed_method"] = std::string(ed::to_string(exact.method));
  doc["manifest"] = manifest(common);
  write_output(common.out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_sweep(const CommonArgs& common, const SweepArgs& args) {
  check_paths(common);
  if (args.m_list.empty()) throw Error(ErrorKind::InvalidArgument, "--m-list is empty");
  if (!std::is_sorted(args.m_list.begin(), args.m_list.end()) ||
      std::adjacent_find(args.m_list.begin(), args.m_list.end()) != args.m_list.end()) {
    throw Error(ErrorKind::InvalidArgument, "--m-list must be strictly ascending");
  }
  const auto model = load_expanded(common);
  warn_if_free(model);

  struct Row {
    std::size_t m;
    double energy;
    double weight;
    double seconds;
    std::size_t memory;
  };
  std::vector<Row> rows;
  for (std::size_t m : args.m_list) {
    const auto start = Clock::now();
    const auto r = dmrg::run_infinite(model, dmrg_config(common, m, args.pairs));
    rows.push_back({m, r.final_energy, max_trunc_weight(r), seconds_since(start, common),
                    r.memory_peak_entries});
  }
  double best = rows.front().energy;
  for (const auto& row : rows) best = std::min(best, row.energy);
  const double last = rows.back().energy;
  const auto self_conv = [&](double e) { return last != 0.0 ? std::abs(e - last) / std::abs(last) : std::abs(e - last); };

  if (common.format == "csv") {
    std::ostringstream out;
    out << "m,E0,error_vs_best,trunc_weight,wall_seconds,peak_memory_entries,self_convergence\n";
    for (const auto& row : rows) {
      out << row.m << ',' << format_double(row.energy) << ',' << format_double(row.energy - best)
          << ',' << format_double(row.weight) << ',' << format_double(row.seconds) << ','
          << row.memory << ',' << format_double(self_conv(row.energy)) << '\n';
    }
    write_output(common.out, out.str());
    return kOk;
  }
  json doc;
  doc["n_levels"] = model.n_levels();
  doc["n_pairs"] = args.pairs;
  json table = json::array();
  for (const auto& row : rows) {
    table.push_back({{"m", row.m},
                     {"E0", row.energy},
                     {"error_vs_best", row.energy - best},
                     {"trunc_weight", row.weight},
                     {"wall_seconds", row.seconds},
                     {"peak_memory_entries", row.memory},
                     {"self_convergence", self_conv(row.energy)}});
  }
  doc["rows"] = std::move(table);
  doc["manifest"] = manifest(common);
  write_output(common.out, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace pairsolve::cli
