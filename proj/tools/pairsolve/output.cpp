// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

namespace pairsolve::cli {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::TooLarge:
      return kSize;
    case ErrorKind::OddN:
    case ErrorKind::EmptySector:
      return kUnsupportedShape;
    case ErrorKind::NoConvergence:
      return kSolverFailure;
    default:
      return kValidation;
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed: " + path);
}

}  // namespace pairsolve::cli
