// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairsolve/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pairsolve/errors.hpp"

namespace pairsolve {

namespace {

Eigen::VectorXd random_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = dist(rng);
  return v;
}

// Orthogonalizes v against the first `cur` columns of basis (two passes) and
// stores it as column `cur`. Returns false when v is numerically dependent.
bool append_orthonormal(Eigen::MatrixXd& basis, Eigen::Index cur, Eigen::VectorXd v) {
  const double initial = v.norm();
  if (!(initial > 0.0) || !std::isfinite(initial)) return false;
  for (int pass = 0; pass < 2; ++pass) {
    if (cur > 0) {
      const Eigen::VectorXd overlap = basis.leftCols(cur).transpose() * v;
      v.noalias() -= basis.leftCols(cur) * overlap;
    }
  }
  const double norm = v.norm();
  if (!(norm > 1e-10 * initial)) return false;
  basis.col(cur) = v / norm;
  return true;
}

EigenPairs dense_solve(const LinearMap& op, Eigen::Index dim, std::size_t k) {
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    e(c) = 1.0;
    op(e, h.col(c));
    e(c) = 0.0;
  }
  const Eigen::MatrixXd sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const auto kk = static_cast<Eigen::Index>(k);
  EigenPairs out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + kk);
  out.vectors = es.eigenvectors().leftCols(kk);
  out.applies = static_cast<std::size_t>(dim);
  out.dense = true;
  for (Eigen::Index i = 0; i < kk; ++i) {
    const Eigen::VectorXd r = sym * out.vectors.col(i) - out.values[static_cast<std::size_t>(i)] *
                                                             out.vectors.col(i);
    out.residual = std::max(out.residual, r.norm());
  }
  return out;
}

}  // namespace

EigenPairs lowest_eigenpairs(const LinearMap& op, Eigen::Index dim, const EigenOptions& options,
                             const std::vector<Eigen::VectorXd>& guesses) {
  const std::size_t k = options.k;
  if (k == 0 || dim <= 0 || static_cast<Eigen::Index>(k) > dim) {
    throw Error(ErrorKind::InvalidArgument, "requested " + std::to_string(k) +
                                                " eigenpairs of a dimension-" +
                                                std::to_string(dim) + " operator");
  }
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (static_cast<std::size_t>(dim) <= options.dense_cutoff) return dense_solve(op, dim, k);

  const auto kk = static_cast<Eigen::Index>(k);
  std::size_t cap = options.max_subspace != 0 ? options.max_subspace : std::max(k + 24, 3 * k);
  const Eigen::Index max_dim =
      std::min<Eigen::Index>(dim, std::max<Eigen::Index>(static_cast<Eigen::Index>(cap), kk + 2));

  std::mt19937_64 rng(options.seed);
  Eigen::MatrixXd v(dim, max_dim);
  Eigen::MatrixXd hv(dim, max_dim);
  Eigen::Index cur = 0;
  std::size_t applies = 0;

  auto push = [&](Eigen::VectorXd candidate) {
    if (cur >= max_dim || !append_orthonormal(v, cur, std::move(candidate))) return false;
    op(v.col(cur), hv.col(cur));
    ++applies;
    ++cur;
    return true;
  };

  for (const auto& g : guesses) {
    if (g.size() != dim) throw Error(ErrorKind::DimensionMismatch, "initial guess has wrong size");
    push(g);
  }
  const Eigen::Index block =
      std::min<Eigen::Index>(dim, std::max<Eigen::Index>(kk, static_cast<Eigen::Index>(guesses.size()) + 1));
  for (int attempts = 0; cur < block && attempts < 64; ++attempts) push(random_vector(dim, rng));

  double scale = 0.0;
  std::vector<double> best;
  double best_residual = 0.0;
  while (true) {
    Eigen::MatrixXd t = v.leftCols(cur).transpose() * hv.leftCols(cur);
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const auto& theta = es.eigenvalues();
    const auto& y = es.eigenvectors();
    scale = std::max({scale, std::abs(theta(0)), std::abs(theta(cur - 1))});

    const Eigen::Index wanted = std::min(kk, cur);
    std::vector<Eigen::VectorXd> residuals;
    double worst = 0.0;
    bool all_converged = wanted == kk;
    for (Eigen::Index i = 0; i < wanted; ++i) {
      Eigen::VectorXd r = hv.leftCols(cur) * y.col(i) - theta(i) * (v.leftCols(cur) * y.col(i));
      const double rn = r.norm();
      worst = std::max(worst, rn);
      if (rn > options.tol * scale) {
        all_converged = false;
        residuals.push_back(std::move(r));
      }
    }
    best.assign(theta.data(), theta.data() + wanted);
    best_residual = worst;

    if (all_converged || cur == dim) {
      EigenPairs out;
      out.values = best;
      out.vectors = v.leftCols(cur) * y.leftCols(kk);
      out.residual = worst;
      out.applies = applies;
      return out;
    }
    if (applies >= options.max_applies) {
      throw NoConvergenceError("no convergence after " + std::to_string(applies) +
                                   " operator applications (residual " +
                                   std::to_string(worst) + ")",
                               best, worst);
    }

    if (cur + static_cast<Eigen::Index>(residuals.size()) > max_dim) {
      const Eigen::Index keep = std::max(kk, max_dim / 2);
      const Eigen::MatrixXd nv = v.leftCols(cur) * y.leftCols(keep);
      const Eigen::MatrixXd nhv = hv.leftCols(cur) * y.leftCols(keep);
      v.leftCols(keep) = nv;
      hv.leftCols(keep) = nhv;
      cur = keep;
    }

    bool extended = false;
    for (auto& r : residuals) extended = push(std::move(r)) || extended;
    for (int attempts = 0; !extended && cur < dim && attempts < 64; ++attempts) {
      extended = push(random_vector(dim, rng));
    }
    if (!extended) {
      throw NoConvergenceError("search space cannot be extended", best, best_residual);
    }
  }
}

}  // namespace pairsolve
