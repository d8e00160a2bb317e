// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace pairsolve {

/// Worker cap: PAIRSOLVE_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count() noexcept;

/// Splits [0, n) into contiguous chunks, one per worker, and runs body(begin, end)
/// on each. Falls back to a single inline call for small n or one worker.
void parallel_for(std::size_t n, std::size_t min_chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pairsolve
