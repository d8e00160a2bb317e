// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairsolve/exactdiag.hpp"

#include <bit>
#include <string>

#include "pairsolve/eigensolver.hpp"
#include "pairsolve/errors.hpp"
#include "pairsolve/parallel.hpp"

namespace pairsolve::ed {

std::string_view to_string(SolveMethod method) noexcept {
  return method == SolveMethod::dense ? "dense" : "iterative";
}

namespace {

double diagonal_element(const PairingModel& model, Pattern s) {
  double e = 0.0;
  for (Pattern a = s; a != 0; a &= a - 1) {
    const auto i = static_cast<Eigen::Index>(std::countr_zero(a));
    e += 2.0 * model.eps(i);
    for (Pattern b = s; b != 0; b &= b - 1) {
      const auto j = static_cast<Eigen::Index>(std::countr_zero(b));
      if (j != i) e += 4.0 * model.v2(i, j);
    }
  }
  return e;
}

void check_basis(const PairingModel& model, const PairBasis& basis) {
  if (basis.n_levels() != model.n_levels()) {
    throw Error(ErrorKind::DimensionMismatch,
                "basis has " + std::to_string(basis.n_levels()) + " levels, model has " +
                    std::to_string(model.n_levels()));
  }
}

}  // namespace

double matrix_element(const PairingModel& model, Pattern s, Pattern t) {
  if (std::popcount(s) != std::popcount(t)) {
    throw Error(ErrorKind::PatternMismatch, "patterns hold different pair numbers");
  }
  if (s == t) return diagonal_element(model, s);
  const Pattern diff = s ^ t;
  if (std::popcount(diff) != 2) return 0.0;
  // One pair left level j (set in s) and arrived on level i (set in t).
  const auto j = static_cast<Eigen::Index>(std::countr_zero(diff & s));
  const auto i = static_cast<Eigen::Index>(std::countr_zero(diff & t));
  return model.v1(i, j);
}

void apply(const PairingModel& model, const PairBasis& basis, std::span<const double> x,
           std::span<double> y) {
  check_basis(model, basis);
  if (x.size() != basis.size() || y.size() != basis.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length differs from basis size " +
                                                  std::to_string(basis.size()));
  }
  const unsigned n = basis.n_levels();
  const Pattern full = n >= 64 ? ~Pattern{0} : (Pattern{1} << n) - 1;
  parallel_for(basis.size(), 4096, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const Pattern s = basis[a];
      double acc = diagonal_element(model, s) * x[a];
      // <s|v1_ij b+_i b_j|t> for every t that differs from s by the pair on i sitting on j.
      for (Pattern occ = s; occ != 0; occ &= occ - 1) {
        const unsigned i = static_cast<unsigned>(std::countr_zero(occ));
        const Pattern without = s & ~(Pattern{1} << i);
        for (Pattern emp = ~s & full; emp != 0; emp &= emp - 1) {
          const unsigned j = static_cast<unsigned>(std::countr_zero(emp));
          const Pattern t = without | (Pattern{1} << j);
          acc += model.v1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                 x[basis.rank(t)];
        }
      }
      y[a] = acc;
    }
  });
}

Eigen::VectorXd apply(const PairingModel& model, const PairBasis& basis, const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  apply(model, basis, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
        std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  return y;
}

Eigen::MatrixXd dense_matrix(const PairingModel& model, const PairBasis& basis) {
  check_basis(model, basis);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      h(a, b) = matrix_element(model, basis[static_cast<std::size_t>(a)],
                               basis[static_cast<std::size_t>(b)]);
    }
  }
  return h;
}

SpectrumResult dense_spectrum(const PairingModel& model, const PairBasis& basis,
                              const DenseOptions& options) {
  if (basis.size() > options.threshold) {
    throw Error(ErrorKind::TooLarge, "basis size " + std::to_string(basis.size()) +
                                         " exceeds dense threshold " +
                                         std::to_string(options.threshold));
  }
  const Eigen::MatrixXd h = dense_matrix(model, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      h, options.want_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  SpectrumResult out;
  out.method = SolveMethod::dense;
  out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  if (options.want_vector) {
    Eigen::VectorXd ground = es.eigenvectors().col(0);
    out.residual = (h * ground - out.energies.front() * ground).norm();
    out.ground_vector = std::move(ground);
  }
  return out;
}

SpectrumResult iterative_ground(const PairingModel& model, const PairBasis& basis,
                                const IterativeOptions& options) {
  check_basis(model, basis);
  if (options.k == 0 || options.k > basis.size() || options.k > options.max_states) {
    throw Error(ErrorKind::InvalidArgument,
                "k = " + std::to_string(options.k) + " must lie in [1, min(" +
                    std::to_string(basis.size()) + ", " + std::to_string(options.max_states) + ")]");
  }
  if (options.dense_fallback != 0 && basis.size() <= options.dense_fallback) {
    auto full = dense_spectrum(model, basis, {options.dense_fallback, options.want_vector});
    full.energies.resize(options.k);
    return full;
  }
  EigenOptions eo;
  eo.k = options.k;
  eo.tol = options.tol;
  eo.seed = options.seed;
  eo.max_applies = options.max_applies;
  const auto op = [&](const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) {
    apply(model, basis, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
          std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  };
  const auto pairs = lowest_eigenpairs(op, static_cast<Eigen::Index>(basis.size()), eo);
  SpectrumResult out;
  out.method = SolveMethod::iterative;
  out.energies = pairs.values;
  out.residual = pairs.residual;
  out.operator_applies = pairs.applies;
  if (options.want_vector) out.ground_vector = pairs.vectors.col(0);
  return out;
}

}  // namespace pairsolve::ed
