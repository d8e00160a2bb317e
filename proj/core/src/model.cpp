// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairsolve/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pairsolve/errors.hpp"

namespace pairsolve {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateEta: return "DegenerateEta";
    case ErrorKind::SingularKernel: return "SingularKernel";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::OddN: return "OddN";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::EmptySector: return "EmptySector";
    case ErrorKind::NotNormalized: return "NotNormalized";
  }
  return "Unknown";
}

std::string_view to_string(FamilyKind family) noexcept {
  switch (family) {
    case FamilyKind::rational: return "rational";
    case FamilyKind::trigonometric: return "trigonometric";
    case FamilyKind::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::optional<FamilyKind> parse_family(std::string_view name) noexcept {
  if (name == "rational") return FamilyKind::rational;
  if (name == "trigonometric") return FamilyKind::trigonometric;
  if (name == "hyperbolic") return FamilyKind::hyperbolic;
  return std::nullopt;
}

namespace {

void check_kernel_args(FamilyKind family, double d_eta) {
  if (!(std::abs(d_eta) > kEtaTolerance)) {
    std::ostringstream os;
    os << "|d_eta| = " << std::abs(d_eta) << " <= " << kEtaTolerance;
    throw Error(ErrorKind::DegenerateEta, os.str());
  }
  if (family == FamilyKind::trigonometric && !(std::abs(std::sin(d_eta)) > kEtaTolerance)) {
    std::ostringstream os;
    os << "|sin(d_eta)| <= " << kEtaTolerance << " at d_eta = " << d_eta;
    throw Error(ErrorKind::SingularKernel, os.str());
  }
}

std::string pair_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

double cot_kernel(FamilyKind family, double d_eps, double d_eta) {
  check_kernel_args(family, d_eta);
  switch (family) {
    case FamilyKind::rational: return d_eps / d_eta;
    case FamilyKind::trigonometric: return d_eps / std::tan(d_eta);
    case FamilyKind::hyperbolic: return d_eps / std::tanh(d_eta);
  }
  return 0.0;
}

double sin_kernel(FamilyKind family, double d_eps, double d_eta) {
  check_kernel_args(family, d_eta);
  switch (family) {
    case FamilyKind::rational: return d_eps / d_eta;
    case FamilyKind::trigonometric: return d_eps / std::sin(d_eta);
    case FamilyKind::hyperbolic: return d_eps / std::sinh(d_eta);
  }
  return 0.0;
}

void IntegrableSpec::validate() const {
  const std::size_t n = epsilon.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "integrable spec needs N >= 2 levels");
  if (eta.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "epsilon has " + std::to_string(n) +
                                                " entries but eta has " +
                                                std::to_string(eta.size()));
  }
  if (!std::isfinite(g)) throw Error(ErrorKind::InvalidArgument, "g is not finite");
  double eta_scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(epsilon[i]) || !std::isfinite(eta[i])) {
      throw Error(ErrorKind::InvalidArgument, "non-finite parameter at level " + std::to_string(i));
    }
    eta_scale = std::max(eta_scale, std::abs(eta[i]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = eta[i] - eta[j];
      if (!(std::abs(d) > kEtaTolerance * eta_scale)) {
        throw Error(ErrorKind::DegenerateEta, "eta values coincide at " + pair_label(i, j));
      }
      if (family == FamilyKind::trigonometric && !(std::abs(std::sin(d)) > kEtaTolerance)) {
        throw Error(ErrorKind::SingularKernel, "sin(eta_i - eta_j) vanishes at " + pair_label(i, j));
      }
    }
  }
}

void PairingModel::validate() const {
  const auto n = eps.size();
  if (v1.rows() != n || v1.cols() != n || v2.rows() != n || v2.cols() != n) {
    throw Error(ErrorKind::InvariantViolation, "coupling matrices must be " + std::to_string(n) +
                                                   "x" + std::to_string(n));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(eps(i))) {
      throw Error(ErrorKind::InvariantViolation, "eps[" + std::to_string(i) + "] is not finite");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ij = pair_label(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!std::isfinite(v1(i, j)) || !std::isfinite(v2(i, j))) {
        throw Error(ErrorKind::InvariantViolation, "non-finite coupling at " + ij);
      }
      if (i == j && (v1(i, i) != 0.0 || v2(i, i) != 0.0)) {
        throw Error(ErrorKind::InvariantViolation, "nonzero diagonal coupling at " + ij);
      }
      if (i < j && v1(i, j) != v1(j, i)) {
        throw Error(ErrorKind::InvariantViolation, "v1 not symmetric at " + ij);
      }
      if (i < j && v2(i, j) != v2(j, i)) {
        throw Error(ErrorKind::InvariantViolation, "v2 not symmetric at " + ij);
      }
    }
  }
}

bool PairingModel::non_interacting() const noexcept {
  return (v1.array() == 0.0).all() && (v2.array() == 0.0).all();
}

PairingModel build_integrable(const IntegrableSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_levels();
  PairingModel model;
  model.eps = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  model.v1 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  model.v2 = model.v1;

  // Kernels are even under (d_eps, d_eta) -> (-d_eps, -d_eta), so evaluating
  // each unordered pair once and mirroring keeps the matrices exactly symmetric.
  std::vector<double> cot_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d_eps = spec.epsilon[i] - spec.epsilon[j];
      const double d_eta = spec.eta[i] - spec.eta[j];
      double kc = 0.0;
      double ks = 0.0;
      try {
        kc = cot_kernel(spec.family, d_eps, d_eta);
        ks = sin_kernel(spec.family, d_eps, d_eta);
      } catch (const Error& e) {
        throw Error(e.kind(), "kernel failed at " + pair_label(i, j) + ": " + e.what());
      }
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      model.v1(ii, jj) = model.v1(jj, ii) = 2.0 * spec.g * ks;
      model.v2(ii, jj) = model.v2(jj, ii) = 0.5 * spec.g * kc;
      cot_sum[i] += kc;
      cot_sum[j] += kc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    model.eps(static_cast<Eigen::Index>(i)) = spec.epsilon[i] - spec.g * cot_sum[i];
  }
  return model;
}

PairingModel build_reduced_bcs(std::span<const double> levels, double pairing_strength) {
  if (levels.size() < 2) throw Error(ErrorKind::InvalidArgument, "reduced BCS needs N >= 2 levels");
  if (!std::isfinite(pairing_strength)) {
    throw Error(ErrorKind::InvalidArgument, "pairing strength is not finite");
  }
  const auto n = static_cast<Eigen::Index>(levels.size());
  PairingModel model;
  model.eps = Eigen::Map<const Eigen::VectorXd>(levels.data(), n);
  model.v1 = Eigen::MatrixXd::Constant(n, n, -pairing_strength);
  model.v1.diagonal().setZero();
  model.v2 = Eigen::MatrixXd::Zero(n, n);
  model.validate();
  return model;
}

PairingModel build_general(Eigen::VectorXd eps, Eigen::MatrixXd v1, Eigen::MatrixXd v2) {
  PairingModel model{std::move(eps), std::move(v1), std::move(v2)};
  model.validate();
  return model;
}

std::size_t param_count(ParamCountKind kind, std::size_t n_levels) {
  if (n_levels < 2) throw Error(ErrorKind::InvalidArgument, "parameter counts need N >= 2");
  switch (kind) {
    case ParamCountKind::general: return 2 * n_levels * n_levels - n_levels;
    case ParamCountKind::integrable_single: return 2 * n_levels + 1;
    case ParamCountKind::integrable_all_families: return 6 * n_levels + 3;
  }
  return 0;
}

PairingModel permute_levels(const PairingModel& model, std::span<const std::size_t> order) {
  const auto n = static_cast<Eigen::Index>(model.n_levels());
  if (static_cast<Eigen::Index>(order.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "permutation length differs from level count");
  }
  std::vector<bool> seen(order.size(), false);
  for (auto k : order) {
    if (k >= order.size() || seen[k]) {
      throw Error(ErrorKind::InvalidArgument, "level order is not a permutation");
    }
    seen[k] = true;
  }
  PairingModel out;
  out.eps.resize(n);
  out.v1.resize(n, n);
  out.v2.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto i = static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)]);
    out.eps(a) = model.eps(i);
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto j = static_cast<Eigen::Index>(order[static_cast<std::size_t>(b)]);
      out.v1(a, b) = model.v1(i, j);
      out.v2(a, b) = model.v2(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> eps_ascending_order(const PairingModel& model) {
  std::vector<std::size_t> order(model.n_levels());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return model.eps(static_cast<Eigen::Index>(a)) < model.eps(static_cast<Eigen::Index>(b));
  });
  return order;
}

}  // namespace pairsolve
