// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model.hpp
 * @brief Pairing Hamiltonians over N doubly degenerate levels.
 *
 *   H = sum_i eps_i n_i + sum_{i!=j} V1_ij b+_i b_j + sum_{i!=j} V2_ij n_i n_j
 *
 * where n_i counts fermions on level i (0 or 2 in the pair sector) and
 * b+_i = c+_{i+} c+_{i-} creates a time-reversed pair.
 *
 * Three exactly solvable families are generated from (g, epsilon_i, eta_i):
 *
 *   eps_i  = epsilon_i - g sum_{j!=i} K_cot(epsilon_i - epsilon_j, eta_i - eta_j)
 *   V1_ij  = 2g K_sin(epsilon_i - epsilon_j, eta_i - eta_j)
 *   V2_ij  = g/2 K_cot(epsilon_i - epsilon_j, eta_i - eta_j)
 *
 * with K_cot(de, dh) = gamma de cot(gamma dh), K_sin(de, dh) = gamma de / sin(gamma dh)
 * and gamma = 0 (rational), 1 (trigonometric) or -i (hyperbolic). The
 * rational kernels are the analytic gamma -> 0 limits and the hyperbolic ones
 * are evaluated in closed real form (coth, 1/sinh).
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pairsolve {

enum class FamilyKind { rational, trigonometric, hyperbolic };

std::string_view to_string(FamilyKind family) noexcept;
std::optional<FamilyKind> parse_family(std::string_view name) noexcept;

/// Relative tolerance for coincident eta values and trigonometric sin(deta) poles.
inline constexpr double kEtaTolerance = 1e-10;

/// Free parameters of one integrable family: g, epsilon_i and eta_i.
struct IntegrableSpec {
  FamilyKind family = FamilyKind::rational;
  double g = 0.0;
  std::vector<double> epsilon;
  std::vector<double> eta;

  [[nodiscard]] std::size_t n_levels() const noexcept { return epsilon.size(); }

  /// Throws InvalidArgument, DegenerateEta or SingularKernel.
  void validate() const;
};

/// Effective single-particle energies and symmetric, zero-diagonal couplings.
struct PairingModel {
  Eigen::VectorXd eps;
  Eigen::MatrixXd v1;
  Eigen::MatrixXd v2;

  [[nodiscard]] std::size_t n_levels() const noexcept {
    return static_cast<std::size_t>(eps.size());
  }

  /// Throws InvariantViolation naming the first offending (i, j).
  void validate() const;

  /// True when both coupling matrices vanish identically.
  [[nodiscard]] bool non_interacting() const noexcept;
};

/// gamma (epsilon_i - epsilon_j) cot(gamma (eta_i - eta_j)), real-valued for every family.
double cot_kernel(FamilyKind family, double d_eps, double d_eta);

/// gamma (epsilon_i - epsilon_j) / sin(gamma (eta_i - eta_j)).
double sin_kernel(FamilyKind family, double d_eps, double d_eta);

PairingModel build_integrable(const IntegrableSpec& spec);

/// Constant pair scattering v1_ij = -G (i != j), no monopole term. The
/// pair-scattering sum excludes i == j, so every seniority-zero eigenvalue sits G*M above the
/// textbook convention that includes the diagonal pair term.
PairingModel build_reduced_bcs(std::span<const double> levels, double pairing_strength);

/// Wraps arbitrary couplings; throws InvariantViolation unless symmetric with zero diagonal.
PairingModel build_general(Eigen::VectorXd eps, Eigen::MatrixXd v1, Eigen::MatrixXd v2);

enum class ParamCountKind { general, integrable_single, integrable_all_families };

/// 2N^2 - N (general), 2N + 1 (one integrable family), 6N + 3 (all three).
std::size_t param_count(ParamCountKind kind, std::size_t n_levels);

/// Reorders levels: level k of the result is level order[k] of the input.
PairingModel permute_levels(const PairingModel& model, std::span<const std::size_t> order);

/// Stable ascending-eps ordering of level indices.
std::vector<std::size_t> eps_ascending_order(const PairingModel& model);

}  // namespace pairsolve
