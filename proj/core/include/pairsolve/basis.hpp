// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file basis.hpp
 * @brief Seniority-zero pair configurations as N-bit occupation patterns.
 *
 * Bit i of a pattern is set when level i holds a pair. States are kept in
 * increasing integer order, which coincides with the colexicographic order
 * of the occupied-level sets; ranking therefore uses the combinatorial
 * number system instead of a hash map.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pairsolve {

using Pattern = std::uint64_t;

inline constexpr std::size_t kMaxLevels = 63;

/// Default cap on the number of enumerated configurations.
inline constexpr std::uint64_t kDefaultBasisBudget = std::uint64_t{1} << 26;

/// binomial(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(unsigned n, unsigned k) noexcept;

class PairBasis {
 public:
  /// Throws TooLarge if binomial(n_levels, n_pairs) exceeds budget.
  static PairBasis enumerate(unsigned n_levels, unsigned n_pairs,
                             std::uint64_t budget = kDefaultBasisBudget);

  [[nodiscard]] unsigned n_levels() const noexcept { return n_levels_; }
  [[nodiscard]] unsigned n_pairs() const noexcept { return n_pairs_; }
  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] std::span<const Pattern> states() const noexcept { return states_; }
  [[nodiscard]] Pattern operator[](std::size_t ordinal) const noexcept { return states_[ordinal]; }

  /// Ordinal of a pattern, or nullopt if it is not a member of this basis.
  [[nodiscard]] std::optional<std::size_t> index_of(Pattern pattern) const noexcept;

  /// Ordinal of a pattern known to be a member; no validation.
  [[nodiscard]] std::size_t rank(Pattern pattern) const noexcept;

 private:
  PairBasis(unsigned n_levels, unsigned n_pairs);

  unsigned n_levels_ = 0;
  unsigned n_pairs_ = 0;
  std::vector<Pattern> states_;
  // choose_[i * (n_pairs + 1) + r] = binomial(i, r)
  std::vector<std::uint64_t> choose_;
};

}  // namespace pairsolve
