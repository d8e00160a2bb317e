// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairsolve/basis.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "pairsolve/errors.hpp"

namespace pairsolve {

std::uint64_t binomial(unsigned n, unsigned k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // result * (n - k + i) / i stays exact because every prefix is itself a binomial.
  __extension__ using Wide = unsigned __int128;
  Wide result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(result);
}

PairBasis::PairBasis(unsigned n_levels, unsigned n_pairs) : n_levels_(n_levels), n_pairs_(n_pairs) {
  const unsigned width = n_pairs + 1;
  choose_.assign(static_cast<std::size_t>(n_levels + 1) * width, 0);
  for (unsigned i = 0; i <= n_levels; ++i) {
    for (unsigned r = 0; r <= n_pairs; ++r) choose_[i * width + r] = binomial(i, r);
  }
}

PairBasis PairBasis::enumerate(unsigned n_levels, unsigned n_pairs, std::uint64_t budget) {
  if (n_levels > kMaxLevels) {
    throw Error(ErrorKind::TooLarge, "at most " + std::to_string(kMaxLevels) +
                                         " levels fit in a pattern, got " +
                                         std::to_string(n_levels));
  }
  if (n_pairs > n_levels) {
    throw Error(ErrorKind::InvalidArgument, "cannot place " + std::to_string(n_pairs) +
                                                " pairs on " + std::to_string(n_levels) +
                                                " levels");
  }
  const auto dim = binomial(n_levels, n_pairs);
  if (dim > budget) {
    throw Error(ErrorKind::TooLarge, "basis dimension binomial(" + std::to_string(n_levels) + "," +
                                         std::to_string(n_pairs) + ") = " + std::to_string(dim) +
                                         " exceeds budget " + std::to_string(budget));
  }
  PairBasis basis(n_levels, n_pairs);
  basis.states_.reserve(dim);
  if (n_pairs == 0) {
    basis.states_.push_back(0);
    return basis;
  }
  // Gosper's hack: next larger integer with the same popcount.
  Pattern s = (Pattern{1} << n_pairs) - 1;
  const Pattern limit = Pattern{1} << n_levels;
  while (s < limit) {
    basis.states_.push_back(s);
    const Pattern c = s & (~s + 1);
    const Pattern r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return basis;
}

std::size_t PairBasis::rank(Pattern pattern) const noexcept {
  const unsigned width = n_pairs_ + 1;
  std::size_t ordinal = 0;
  unsigned r = 1;
  while (pattern != 0) {
    const auto pos = static_cast<unsigned>(std::countr_zero(pattern));
    ordinal += choose_[pos * width + r];
    pattern &= pattern - 1;
    ++r;
  }
  return ordinal;
}

std::optional<std::size_t> PairBasis::index_of(Pattern pattern) const noexcept {
  if (std::popcount(pattern) != static_cast<int>(n_pairs_)) return std::nullopt;
  if (n_levels_ < 64 && (pattern >> n_levels_) != 0) return std::nullopt;
  return rank(pattern);
}

}  // namespace pairsolve
