// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file eigensolver.hpp
 * @brief Matrix-free solver for the lowest eigenpairs of a real symmetric operator.
 *
 * Thick-restarted Krylov iteration with full (two-pass) reorthogonalization.
 * The search space starts from a block of seeded random vectors (plus any
 * caller-supplied guesses) and is extended with the residuals of the
 * unconverged Ritz pairs; for a single target this spans the same space as
 * Lanczos. When the space reaches its cap it is compressed onto the lowest
 * Ritz vectors.
 *
 * A pair is converged when ||H y - theta y|| <= tol * scale, with scale the
 * largest |Ritz value| seen so far (a spectral-width estimate). Since
 * |theta - lambda| <= ||H y - theta y||, the eigenvalue error is bounded by
 * the same quantity.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace pairsolve {

/// y = H x. x and y never alias.
using LinearMap =
    std::function<void(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y)>;

struct EigenOptions {
  std::size_t k = 1;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t max_applies = 20000;
  /// 0 selects max(k + 24, 3k), capped by the operator dimension.
  std::size_t max_subspace = 0;
  /// Operators with dimension <= this are materialized and solved densely.
  std::size_t dense_cutoff = 0;
};

struct EigenPairs {
  std::vector<double> values;   // ascending
  Eigen::MatrixXd vectors;      // dim x k, orthonormal columns
  double residual = 0.0;        // max ||H y - theta y|| over returned pairs
  std::size_t applies = 0;
  bool dense = false;
};

/// Throws InvalidArgument for k == 0 or k > dim, NoConvergenceError when
/// max_applies is exhausted.
EigenPairs lowest_eigenpairs(const LinearMap& op, Eigen::Index dim, const EigenOptions& options,
                             const std::vector<Eigen::VectorXd>& guesses = {});

}  // namespace pairsolve
