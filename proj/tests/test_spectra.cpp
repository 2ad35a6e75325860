// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddesim/spectra.hpp"
#include "support/oracles.hpp"

using namespace ddesim;

namespace {

EvolutionMatrices wrap(const CMatrix& t, bool real) {
  EvolutionMatrices m;
  m.t_matrix = t;
  m.real_valued = real;
  return m;
}

DdeProblem hayes(double b, double r = 1.0) {
  DdeProblem p;
  p.r = r;
  p.b = constant_coefficient(b);
  return p;
}

DdeProblem periodic(double a0, double a1) {
  DdeProblem p;
  p.a = [a0, a1](double t) {
    return CMatrix::Constant(1, 1, Complex(a0 + a1 * std::sin(2.0 * std::numbers::pi * t), 0.0));
  };
  return p;
}

double distance_to_set(Complex z, const std::vector<Complex>& set) {
  double best = INFINITY;
  for (auto w : set) best = std::min(best, std::abs(z - w));
  return best;
}

}  // namespace

TEST_CASE("negligible eigenvalues are dropped") {
  CMatrix t = CMatrix::Zero(2, 2);
  t(0, 0) = 2.0;
  t(1, 1) = 1e-16;
  const auto spec = multipliers(wrap(t, true));
  REQUIRE(spec.multipliers.size() == 1);
  CHECK(spec.multipliers.front() == Complex(2.0));
  CHECK(spec.spectral_radius == 2.0);
}

TEST_CASE("repeated multipliers form one cluster") {
  const auto spec = multipliers(wrap(CMatrix::Identity(2, 2), true));
  REQUIRE(spec.multipliers.size() == 2);
  REQUIRE(spec.clusters.size() == 1);
  CHECK(spec.clusters.front().count == 2);
  CHECK(spec.clusters.front().mean == Complex(1.0));
  CHECK(spec.verdict == Verdict::marginal);
}

TEST_CASE("ordering by modulus then imaginary part") {
  CMatrix t = CMatrix::Zero(4, 4);
  t(0, 0) = Complex(0.0, -1.0);
  t(1, 1) = 0.5;
  t(2, 2) = Complex(0.0, 1.0);
  t(3, 3) = -1.0;
  const auto spec = multipliers(wrap(t, false));
  REQUIRE(spec.multipliers.size() == 4);
  CHECK(spec.multipliers[0] == Complex(0.0, 1.0));
  CHECK(spec.multipliers[1] == Complex(-1.0, 0.0));
  CHECK(spec.multipliers[2] == Complex(0.0, -1.0));
  CHECK(spec.multipliers[3] == Complex(0.5, 0.0));
}

TEST_CASE("clustering") {
  const auto cs = cluster({Complex(1.0), Complex(1.0 + 1e-8), Complex(0.5)}, 1e-6);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].count == 2);
  CHECK(cs[1].count == 1);
  CHECK(std::abs(cs[0].mean - Complex(1.0 + 5e-9)) < 1e-15);
  // same modulus but far apart on the circle stays separate
  const auto ring = cluster({Complex(0.0, 1.0), Complex(0.0, -1.0)}, 1e-6);
  CHECK(ring.size() == 2);
  CHECK_THROWS_AS(cluster({Complex(1.0)}, 0.0), InvalidArgument);
}

TEST_CASE("verdicts") {
  CHECK(stability_verdict({Complex(0.5), Complex(0.0, 0.3)}, 1e-9) == Verdict::stable);
  CHECK(stability_verdict({Complex(1.0 + 1e-6)}, 1e-9) == Verdict::unstable);
  CHECK(stability_verdict({Complex(1.0 + 1e-12)}, 1e-9) == Verdict::marginal);
  CHECK(stability_verdict({Complex(0.0, 1.0)}, 1e-9) == Verdict::marginal);
  CHECK_THROWS_AS(stability_verdict(std::vector<Complex>{}, 1e-9), InvalidArgument);
  CHECK(to_string(Verdict::stable) == "stable");
  CHECK(to_string(Verdict::unstable) == "unstable");
  CHECK(to_string(Verdict::marginal) == "marginal");
}

TEST_CASE("zero problem has the single multiplier one") {
  DdeProblem p;
  const auto mats = evolution_matrix(p, 8, 8);
  const auto spec = multipliers(mats);
  REQUIRE(spec.multipliers.size() == 1);
  CHECK(std::abs(spec.multipliers.front() - 1.0) < 1e-12);
  const CVector v = spec.eigenvectors.col(0);
  for (Eigen::Index i = 1; i < v.size(); ++i) CHECK(std::abs(v(i) - v(0)) < 1e-12);
  const auto grids = make_grids(8, 8, 1.0, 1.0);
  const auto psi = eigenfunction(mats, v, grids);
  for (double th : {0.0, -0.3, -1.0}) CHECK(std::abs(psi(th)(0) - 1.0) < 1e-12);
}

TEST_CASE("eigenfunction of the ordinary equation is exponential") {
  DdeProblem p;
  p.a = constant_coefficient(std::log(2.0));
  const auto mats = evolution_matrix(p, 20, 20);
  const auto spec = multipliers(mats);
  const auto grids = make_grids(20, 20, 1.0, 1.0);
  const auto psi = eigenfunction(mats, spec.eigenvectors.col(0), grids);
  for (int k = 0; k <= 100; ++k) {
    const double th = -k / 100.0;
    CHECK(std::abs(psi(th)(0) - std::exp(std::log(2.0) * th)) < 1e-6);
  }
  CHECK_THROWS_AS(eigenfunction(mats, CVector::Zero(21), grids), InvalidArgument);
  CHECK_THROWS_AS(eigenfunction(mats, CVector::Ones(5), grids), InvalidArgument);
}

TEST_CASE("monodromy power") {
  CHECK(monodromy_power(1.0, 1.0) == 1);
  CHECK(monodromy_power(0.6, 1.0) == 2);
  CHECK(monodromy_power(0.25, 1.0) == 4);
  CHECK(monodromy_power(3.0, 1.0) == 1);
  CHECK_THROWS_AS(monodromy_power(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(monodromy_power(-1.0, 1.0), InvalidArgument);
}

TEST_CASE("periodic ordinary equations") {
  const auto rule = default_rule(20);
  SUBCASE("zero-mean coefficient") {
    const auto res = monodromy(periodic(0.0, 1.0), 1.0, 0, 20, 20, rule);
    CHECK(res.k == 1);
    const auto spec = multipliers(res.mats);
    CHECK(std::abs(spec.multipliers.front() - 1.0) < 1e-10);
    CHECK(spec.verdict == Verdict::marginal);
  }
  SUBCASE("negative mean") {
    const auto res = monodromy(periodic(-1.0, 1.0), 1.0, 0, 24, 24, default_rule(24));
    const auto spec = multipliers(res.mats);
    CHECK(std::abs(spec.multipliers.front() - std::exp(-1.0)) < 1e-10);
    CHECK(spec.verdict == Verdict::stable);
  }
  SUBCASE("short period is iterated") {
    const auto res = monodromy(periodic(0.0, 1.0), 0.6, 0, 20, 20, rule);
    CHECK(res.k == 2);
    CHECK(res.window == doctest::Approx(1.2));
  }
}

TEST_CASE("multipliers are closed under conjugation for real problems") {
  const auto spec = multipliers(evolution_matrix(hayes(-1.0), 16, 16));
  for (auto mu : spec.multipliers) {
    CHECK(distance_to_set(std::conj(mu), spec.multipliers) < 1e-10 * std::max(1.0, std::abs(mu)));
  }
}

TEST_CASE("eigenpairs satisfy the residual bound") {
  const auto mats = evolution_matrix(hayes(-1.2), 14, 14);
  const auto spec = multipliers(mats);
  const double norm = mats.t_matrix.norm();
  for (std::size_t k = 0; k < spec.multipliers.size(); ++k) {
    const CVector v = spec.eigenvectors.col(static_cast<Eigen::Index>(k));
    const double res = (mats.t_matrix * v - spec.multipliers[k] * v).norm() / v.norm();
    CHECK(res < 1e-10 * norm);
  }
}

TEST_CASE("dominant multipliers do not depend on the history grid size") {
  const auto rule = default_rule(21);
  const auto a = multipliers(evolution_matrix(hayes(-1.0), 16, 16, rule));
  const auto b = multipliers(evolution_matrix(hayes(-1.0), 16, 21, rule));
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(a.multipliers[k] - b.multipliers[k]) < 1e-10);
  }
}

TEST_CASE("doubling the window squares the multipliers") {
  const auto one = multipliers(evolution_matrix(hayes(-1.0, 1.0), 20, 20));
  const auto two = multipliers(evolution_matrix(hayes(-1.0, 2.0), 30, 20));
  for (int k = 0; k < 4; ++k) {
    const Complex sq = one.multipliers[k] * one.multipliers[k];
    CHECK(distance_to_set(sq, two.multipliers) < 1e-8);
  }
}
