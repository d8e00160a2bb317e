// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file errors.hpp
 * @brief Error kinds raised by the pairsolve library.
 *
 * Every failure is reported as a pairsolve::Error carrying an ErrorKind, so
 * callers (the CLI in particular) can map failures onto stable exit codes
 * without parsing messages.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pairsolve {

enum class ErrorKind {
  InvalidArgument,
  DegenerateEta,
  SingularKernel,
  SchemaError,
  InvariantViolation,
  TooLarge,
  PatternMismatch,
  DimensionMismatch,
  NoConvergence,
  OddN,
  InfeasibleTarget,
  EmptySector,
  NotNormalized,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an iterative eigensolver runs out of iterations. Carries the
/// best Ritz values seen and their worst residual norm.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, std::vector<double> best_values,
                     double residual)
      : Error(ErrorKind::NoConvergence, message),
        best_values_(std::move(best_values)),
        residual_(residual) {}

  [[nodiscard]] const std::vector<double>& best_values() const noexcept { return best_values_; }
  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  std::vector<double> best_values_;
  double residual_;
};

}  // namespace pairsolve
