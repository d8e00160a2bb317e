// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pairsolve::cli {

/// Flags shared by every subcommand. Paths are recorded verbatim in the
/// output manifest.
struct CommonArgs {
  std::string command;
  std::string model_path;
  std::string out;  // empty or "-" means stdout
  std::string format;  // csv | json
  std::uint64_t seed = 0;
  std::optional<double> tol;
  bool no_timestamp = false;
};

struct BuildArgs {
  std::string family;
  std::optional<double> g;
  std::vector<double> epsilon;
  std::vector<double> eta;
  std::vector<double> eps;      // reduced BCS levels
  std::optional<double> big_g;  // reduced BCS strength
};

struct EdArgs {
  std::size_t pairs = 0;
  std::size_t k = 1;
  std::size_t dense_threshold = 4000;
  std::string vector_out;
};

struct DmrgArgs {
  std::size_t pairs = 0;
  std::size_t m = 64;
  std::string level_order = "eps";
  std::string summary_out;
};

struct CompareArgs {
  std::size_t pairs = 0;
  std::size_t m = 64;
  std::size_t dense_threshold = 4000;
};

struct SweepArgs {
  std::size_t pairs = 0;
  std::vector<std::size_t> m_list;
};

/// Each command returns a process exit code; library errors propagate as
/// pairsolve::Error and are mapped by the caller.
int cmd_build(const CommonArgs& common, const BuildArgs& args);
int cmd_ed(const CommonArgs& common, const EdArgs& args);
int cmd_dmrg(const CommonArgs& common, const DmrgArgs& args);
int cmd_compare(const CommonArgs& common, const CompareArgs& args);
int cmd_sweep(const CommonArgs& common, const SweepArgs& args);

}  // namespace pairsolve::cli
