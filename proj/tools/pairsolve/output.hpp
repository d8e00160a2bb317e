// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <pairsolve/errors.hpp>

namespace pairsolve::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kSize = 3,
  kUnsupportedShape = 4,
  kSolverFailure = 5,
};

int exit_code(ErrorKind kind) noexcept;

/// Round-trip safe: 17 significant digits, '.' decimal separator.
std::string format_double(double x);

/// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

/// Writes to stdout when path is empty or "-". Throws InvalidArgument when the
/// file cannot be opened.
void write_output(const std::string& path, const std::string& text);

}  // namespace pairsolve::cli
