// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <pairsolve/errors.hpp>
#include <pairsolve/model.hpp>

#include "test_support.hpp"

using namespace pairsolve;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a pairsolve::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("kernel closed forms") {
  const double pi = std::numbers::pi;
  CHECK(cot_kernel(FamilyKind::rational, 2.0, 4.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cot_kernel(FamilyKind::trigonometric, 1.0, pi / 4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cot_kernel(FamilyKind::hyperbolic, 1.0, std::log(3.0)) ==
        doctest::Approx(1.25).epsilon(1e-14));
  CHECK(sin_kernel(FamilyKind::rational, 3.0, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(sin_kernel(FamilyKind::trigonometric, 1.0, pi / 6) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sin_kernel(FamilyKind::hyperbolic, 1.0, std::log(3.0)) ==
        doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("kernel errors") {
  for (auto f : {FamilyKind::rational, FamilyKind::trigonometric, FamilyKind::hyperbolic}) {
    CHECK(kind_of([&] { cot_kernel(f, 1.0, 0.0); }) == ErrorKind::DegenerateEta);
    CHECK(kind_of([&] { sin_kernel(f, 1.0, 5e-11); }) == ErrorKind::DegenerateEta);
  }
  CHECK(kind_of([] { cot_kernel(FamilyKind::trigonometric, 1.0, std::numbers::pi); }) ==
        ErrorKind::SingularKernel);
  // pi is a pole only for the trigonometric family.
  CHECK(std::isfinite(cot_kernel(FamilyKind::hyperbolic, 1.0, std::numbers::pi)));
}

TEST_CASE("kernels are even under a joint sign flip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double de = u(rng);
    double dh = u(rng);
    if (std::abs(dh) < 1e-3 || std::abs(std::sin(dh)) < 1e-3) continue;
    for (auto f : {FamilyKind::rational, FamilyKind::trigonometric, FamilyKind::hyperbolic}) {
      CHECK(cot_kernel(f, de, dh) == doctest::Approx(cot_kernel(f, -de, -dh)).epsilon(1e-14));
      CHECK(sin_kernel(f, de, dh) == doctest::Approx(sin_kernel(f, -de, -dh)).epsilon(1e-14));
    }
  }
}

TEST_CASE("build_integrable: two-level trigonometric example") {
  IntegrableSpec spec{FamilyKind::trigonometric, 0.1, {0.0, 1.0}, {0.0, std::numbers::pi / 4}};
  const auto m = build_integrable(spec);
  // Frozen from tests/oracles/pairing_oracle.py.
  CHECK(m.eps(0) == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(m.eps(1) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(m.v1(0, 1) == doctest::Approx(0.28284271247461906).epsilon(1e-14));
  CHECK(m.v2(0, 1) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(m.v1(0, 0) == 0.0);
  CHECK(m.v1(1, 0) == m.v1(0, 1));
}

TEST_CASE("build_integrable: rational family with eta = epsilon") {
  IntegrableSpec spec;
  spec.family = FamilyKind::rational;
  spec.g = -0.2;
  spec.epsilon = testing::iota_levels(8);
  spec.eta = spec.epsilon;
  const auto m = build_integrable(spec);
  for (Eigen::Index i = 0; i < 8; ++i) {
    CHECK(m.eps(i) == doctest::Approx(static_cast<double>(i + 1) + 1.4).epsilon(1e-14));
    for (Eigen::Index j = 0; j < 8; ++j) {
      if (i == j) continue;
      CHECK(m.v1(i, j) == -0.4);
      CHECK(m.v2(i, j) == -0.1);
    }
  }
}

TEST_CASE("build_integrable: exact rational reduction for random level sets") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto spec = testing::random_integrable(6, FamilyKind::rational, rng);
    spec.eta = spec.epsilon;
    const auto m = build_integrable(spec);
    for (Eigen::Index i = 0; i < 6; ++i) {
      CHECK(m.eps(i) == spec.epsilon[static_cast<std::size_t>(i)] - spec.g * 5.0);
      for (Eigen::Index j = 0; j < 6; ++j) {
        if (i == j) continue;
        CHECK(m.v1(i, j) == 2.0 * spec.g);
        CHECK(m.v2(i, j) == 0.5 * spec.g);
      }
    }
  }
}

TEST_CASE("build_integrable: g = 0 is non-interacting") {
  std::mt19937_64 rng(3);
  for (auto f : {FamilyKind::rational, FamilyKind::trigonometric, FamilyKind::hyperbolic}) {
    auto spec = testing::random_integrable(5, f, rng);
    spec.g = 0.0;
    const auto m = build_integrable(spec);
    CHECK(m.non_interacting());
    for (Eigen::Index i = 0; i < 5; ++i) CHECK(m.eps(i) == spec.epsilon[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("build_integrable output is Hermitian for every family") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = static_cast<FamilyKind>(trial % 3);
    const auto spec = testing::random_integrable(2 + static_cast<std::size_t>(trial % 9), f, rng);
    const auto m = build_integrable(spec);
    CHECK_NOTHROW(m.validate());
    CHECK(m.v1 == m.v1.transpose());
    CHECK(m.v2 == m.v2.transpose());
    CHECK((m.v1.diagonal().array() == 0.0).all());
    CHECK((m.v2.diagonal().array() == 0.0).all());
  }
}

TEST_CASE("build_integrable: invalid specs") {
  IntegrableSpec spec{FamilyKind::hyperbolic, 0.1, {0.0, 1.0, 2.0}, {0.3, 0.5, 0.3}};
  CHECK(kind_of([&] { build_integrable(spec); }) == ErrorKind::DegenerateEta);
  spec.eta = {0.3, 0.5};
  CHECK(kind_of([&] { build_integrable(spec); }) == ErrorKind::InvalidArgument);
  IntegrableSpec trig{FamilyKind::trigonometric, 0.1, {0.0, 1.0}, {0.0, std::numbers::pi}};
  CHECK(kind_of([&] { build_integrable(trig); }) == ErrorKind::SingularKernel);
  IntegrableSpec tiny{FamilyKind::rational, 0.1, {0.0}, {0.0}};
  CHECK(kind_of([&] { build_integrable(tiny); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("build_integrable reports the offending pair") {
  IntegrableSpec spec{FamilyKind::rational, 0.1, {0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}};
  try {
    build_integrable(spec);
    FAIL("expected DegenerateEta");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }
}

TEST_CASE("build_reduced_bcs") {
  const std::vector<double> zero{0.0, 0.0};
  const auto m = build_reduced_bcs(zero, 1.0);
  CHECK(m.v1(0, 1) == -1.0);
  CHECK(m.v1(1, 0) == -1.0);
  CHECK(m.v1(0, 0) == 0.0);
  CHECK(m.v2.isZero(0.0));
  CHECK(build_reduced_bcs(testing::iota_levels(5), 0.0).non_interacting());
  const auto big = build_reduced_bcs(testing::iota_levels(100), 0.224);
  CHECK(big.n_levels() == 100);
  CHECK(big.v1(3, 77) == -0.224);
  CHECK(kind_of([] { build_reduced_bcs(std::vector<double>{1.0}, 1.0); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("general models must be symmetric with zero diagonal") {
  Eigen::MatrixXd v1{{0.0, 1.0}, {2.0, 0.0}};
  Eigen::MatrixXd v2 = Eigen::MatrixXd::Zero(2, 2);
  CHECK(kind_of([&] { build_general(Eigen::Vector2d(0, 1), v1, v2); }) ==
        ErrorKind::InvariantViolation);
  v1(1, 0) = 1.0;
  v2(1, 1) = 0.5;
  CHECK(kind_of([&] { build_general(Eigen::Vector2d(0, 1), v1, v2); }) ==
        ErrorKind::InvariantViolation);
  v2(1, 1) = 0.0;
  CHECK_NOTHROW(build_general(Eigen::Vector2d(0, 1), v1, v2));
}

TEST_CASE("parameter counts") {
  CHECK(param_count(ParamCountKind::general, 10) == 190);
  CHECK(param_count(ParamCountKind::integrable_single, 10) == 21);
  CHECK(param_count(ParamCountKind::integrable_all_families, 10) == 63);
  for (std::size_t n = 2; n < 40; ++n) {
    CHECK(param_count(ParamCountKind::integrable_all_families, n) ==
          3 * param_count(ParamCountKind::integrable_single, n));
  }
  CHECK(kind_of([] { param_count(ParamCountKind::general, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("permute_levels and eps ordering") {
  std::mt19937_64 rng(9);
  const auto m = testing::random_general(5, rng);
  const std::vector<std::size_t> order{4, 2, 0, 3, 1};
  const auto p = permute_levels(m, order);
  for (Eigen::Index a = 0; a < 5; ++a) {
    CHECK(p.eps(a) == m.eps(static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)])));
  }
  CHECK(p.v1(0, 1) == m.v1(4, 2));
  const auto sorted = eps_ascending_order(m);
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    CHECK(m.eps(static_cast<Eigen::Index>(sorted[k - 1])) <=
          m.eps(static_cast<Eigen::Index>(sorted[k])));
  }
  const std::vector<std::size_t> bad{0, 0, 1, 2, 3};
  CHECK(kind_of([&] { permute_levels(m, bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("family names round-trip") {
  for (auto f : {FamilyKind::rational, FamilyKind::trigonometric, FamilyKind::hyperbolic}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_FALSE(parse_family("elliptic").has_value());
}
