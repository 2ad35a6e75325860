// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "ddesim/evolution.hpp"
#include "ddesim/extended.hpp"
#include "ddesim/spectra.hpp"
#include "support/oracles.hpp"

using namespace ddesim;

namespace {

DdeProblem scalar(double a, double b, double c0, double r = 1.0) {
  DdeProblem p;
  p.r = r;
  if (a != 0.0) p.a = constant_coefficient(a);
  if (b != 0.0) p.b = constant_coefficient(b);
  if (c0 != 0.0) p.c = constant_kernel(c0);
  return p;
}

double distance(const QuadComplex& q, Complex z) {
  return std::abs(Complex(static_cast<double>(q.real()), static_cast<double>(q.imag())) - z);
}

}  // namespace

TEST_CASE("extended multipliers agree with the double path") {
  for (const DdeProblem& p : {scalar(0.0, -1.0, 0.0), scalar(0.3, -1.2, 0.0, 1.5), scalar(0.0, 0.0, -1.0),
                              scalar(-0.5, 0.4, 0.7)}) {
    const auto rule = default_rule(14);
    const auto dbl = multipliers(evolution_matrix(p, 14, 14, rule)).multipliers;
    const auto ext = multipliers_quad(p, 14, 14, rule);
    REQUIRE(dbl.size() == ext.size());
    for (std::size_t k = 0; k < std::min<std::size_t>(dbl.size(), 4); ++k) {
      CHECK(distance(ext[k], dbl[k]) < 1e-11);
    }
  }
}

TEST_CASE("extended multipliers are ordered by descending modulus") {
  const auto ext = multipliers_quad(scalar(0.0, -1.0, 0.0), 12, 12, default_rule(12));
  for (std::size_t k = 1; k < ext.size(); ++k) CHECK(abs(ext[k - 1]) >= abs(ext[k]));
}

TEST_CASE("ordinary equation reaches errors far below double round-off") {
  const auto ext = multipliers_quad(scalar(std::log(2.0), 0.0, 0.0), 24, 24, default_rule(24));
  REQUIRE(ext.size() == 1);
  // the promoted coefficient is log(2) rounded to double
  const Quad expected = exp(Quad(std::log(2.0)));
  CHECK(static_cast<double>(abs(ext.front() - expected)) < 1e-25);
}

TEST_CASE("retarded benchmark against a quad Newton root") {
  const QuadComplex lambda =
      oracle::retarded_root_in<Quad>(Quad(0), Quad(-1), Quad(1), QuadComplex(Quad(-0.32), Quad(1.34)));
  const QuadComplex target = exp(lambda);
  double previous = 1.0;
  for (int n : {5, 10, 15, 20}) {
    const QuadComplex mu = multipliers_quad(scalar(0.0, -1.0, 0.0), n, n, default_rule(n)).front();
    const double err = static_cast<double>(std::min(abs(mu - target), abs(mu - std::conj(target))));
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-28);
}

TEST_CASE("complex coefficients use the complex eigensolver") {
  DdeProblem p;
  p.a = [](double) { return CMatrix::Constant(1, 1, Complex(0.0, 1.0)); };
  const auto ext = multipliers_quad(p, 24, 24, default_rule(24));
  REQUIRE(ext.size() == 1);
  const QuadComplex expected(cos(Quad(1)), sin(Quad(1)));
  CHECK(static_cast<double>(abs(ext.front() - expected)) < 1e-25);
}

TEST_CASE("extended path argument checks") {
  const DdeProblem p = scalar(0.0, -1.0, 0.0);
  CHECK_THROWS_AS(multipliers_quad(p, 0, 5, default_rule(5)), InvalidArgument);
  CHECK_THROWS_AS(multipliers_quad(p, 5, 0, default_rule(5)), InvalidArgument);
  CHECK_THROWS_AS(multipliers_quad(p, 5, 5, QuadratureRule{QuadratureKind::gauss_legendre, 0}),
                  InvalidArgument);
  // one node at 1/2 makes the collocation matrix [[1, 0], [-2, 2 - a]]
  CHECK_THROWS_AS(multipliers_quad(scalar(2.0, 0.0, 0.0), 1, 1, default_rule(4)), SingularMatrixError);
}
