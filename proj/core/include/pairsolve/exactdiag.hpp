// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file exactdiag.hpp
 * @brief Exact spectra of a pairing model in the seniority-zero sector.
 *
 * Pairs behave as hard-core bosons: every pair hop carries a positive phase
 * and there are no fermionic strings between levels. In the pair basis
 *
 *   <s|H|s> = 2 sum_{i in s} eps_i + 4 sum_{i != j in s} v2_ij
 *   <t|H|s> = v1_ij   if t is s with one pair moved from level j to level i.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pairsolve/basis.hpp"
#include "pairsolve/model.hpp"

namespace pairsolve::ed {

enum class SolveMethod { dense, iterative };

std::string_view to_string(SolveMethod method) noexcept;

inline constexpr std::size_t kDefaultDenseThreshold = 4000;

struct SpectrumResult {
  std::vector<double> energies;  // ascending
  std::optional<Eigen::VectorXd> ground_vector;
  double residual = 0.0;
  SolveMethod method = SolveMethod::dense;
  std::size_t operator_applies = 0;
};

/// Throws PatternMismatch if the patterns hold different numbers of pairs.
double matrix_element(const PairingModel& model, Pattern s, Pattern t);

/// y = H x without materializing H. Each output entry is a fixed-order sum
/// over its row, so results do not depend on the worker count.
void apply(const PairingModel& model, const PairBasis& basis, std::span<const double> x,
           std::span<double> y);

Eigen::VectorXd apply(const PairingModel& model, const PairBasis& basis, const Eigen::VectorXd& x);

/// Materialized Hamiltonian (for the dense oracle and tests).
Eigen::MatrixXd dense_matrix(const PairingModel& model, const PairBasis& basis);

struct DenseOptions {
  std::size_t threshold = kDefaultDenseThreshold;
  bool want_vector = true;
};

/// Full spectrum. Throws TooLarge above options.threshold.
SpectrumResult dense_spectrum(const PairingModel& model, const PairBasis& basis,
                              const DenseOptions& options = {});

struct IterativeOptions {
  std::size_t k = 1;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t max_applies = 20000;
  std::size_t max_states = 64;
  /// Bases no larger than this are handed to dense_spectrum; 0 disables the fallback.
  std::size_t dense_fallback = 0;
  bool want_vector = true;
};

/// Lowest k eigenvalues by restarted Krylov iteration. Deterministic for a given seed.
SpectrumResult iterative_ground(const PairingModel& model, const PairBasis& basis,
                                const IterativeOptions& options = {});

}  // namespace pairsolve::ed
