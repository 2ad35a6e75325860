// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ddesim/collocate.hpp"
#include "support/oracles.hpp"

using namespace ddesim;

namespace {

ShiftedProblem scalar(double a, double b, double c0, double tau = 1.0, double rs = 1.0) {
  ShiftedProblem p;
  p.tau = tau;
  p.rs = rs;
  if (a != 0.0) p.a_s = constant_coefficient(a);
  if (b != 0.0) p.b_s = constant_coefficient(b);
  if (c0 != 0.0) p.c_s = constant_kernel(c0);
  return p;
}

InitialFunction constant(double v) {
  return [v](double) { return CVector::Constant(1, v); };
}

InitialFunction cosine() {
  return [](double th) { return CVector::Constant(1, std::cos(th)); };
}

double sup_error(const CollocationSolution& sol, const std::function<double(double)>& exact,
                 double rs) {
  double err = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double t = rs * k / 400.0;
    err = std::max(err, std::abs(sol(t)(0) - exact(t)));
  }
  return err;
}

}  // namespace

TEST_CASE("trivial equation keeps a constant") {
  const auto grids = make_grids(6, 6, 1.0, 1.0);
  const auto sol = collocation_solve(scalar(0, 0, 0), constant(1.0), grids, gauss_legendre(8));
  CHECK(sup_error(sol, [](double) { return 1.0; }, 1.0) < 1e-13);
}

TEST_CASE("exponential growth") {
  const auto grids = make_grids(16, 16, 1.0, 1.0);
  const auto sol = collocation_solve(scalar(1, 0, 0), constant(1.0), grids, gauss_legendre(10));
  CHECK(std::abs(sol(1.0)(0) - std::exp(1.0)) < 1e-12);
}

TEST_CASE("retarded equation with unit history is exact for every N") {
  for (int n : {1, 2, 5, 12, 20}) {
    const auto grids = make_grids(n, n, 1.0, 1.0);
    const auto sol = collocation_solve(scalar(0, -1, 0), constant(1.0), grids, default_rule(n));
    CHECK(sup_error(sol, [](double t) { return 1.0 - t; }, 1.0) < 1e-13);
  }
}

TEST_CASE("distributed equation with unit history") {
  // y' = -int_{t-1}^t y with y = 1 on [-1, 0] has y = 1 - sin t on [0, 1].
  const auto grids = make_grids(16, 16, 1.0, 1.0);
  const auto sol = collocation_solve(scalar(0, 0, -1), constant(1.0), grids, default_rule(16));
  CHECK(sup_error(sol, [](double t) { return 1.0 - std::sin(t); }, 1.0) < 1e-12);
}

TEST_CASE("collocation reproduces the initial value") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double c0 = g(rng), c1 = g(rng), c2 = g(rng);
    InitialFunction phi = [=](double th) { return CVector::Constant(1, c0 + c1 * th + c2 * std::sin(3 * th)); };
    const auto grids = make_grids(9, 7, 1.0, 1.3);
    const auto sol = collocation_solve(scalar(0.2, -0.7, 0.3, 1.0, 1.3), phi, grids, default_rule(9));
    CHECK(std::abs(sol(0.0)(0) - phi(0.0)(0)) < 1e-13 * (1.0 + std::abs(c0)));
  }
}

TEST_CASE("collocation residual vanishes at the nodes") {
  const double a = 0.3, b = -0.8, c0 = 0.5, tau = 1.0, rs = 1.4;
  const int n = 12, m = 12;
  const auto grids = make_grids(n, m, tau, rs);
  const auto rule = default_rule(n);
  const auto phi = cosine();
  const auto sol = collocation_solve(scalar(a, b, c0, tau, rs), phi, grids, rule);
  // phi_M as the solver sees it
  const CVector hist = sample_history(phi, grids.minus, 1);
  auto x = [&](double u) {
    return u >= 0.0 ? sol(u)(0) : interp_eval(grids.minus, hist, 1, u)(0);
  };
  const auto fine = gauss_legendre(40);
  for (int i = 1; i <= n; ++i) {
    const double t = grids.plus0.node(i);
    const auto d = basis_deriv_row(grids.plus0, t);
    Complex deriv = 0.0;
    for (int j = 0; j <= n; ++j) deriv += d[j] * sol.nodal_values(j);
    // the integrand is piecewise polynomial; split at 0
    const double split = std::clamp(-t, -tau, 0.0);
    const Complex integral = integrate(fine, [&](double th) { return x(t + th); }, -tau, split) +
                             integrate(fine, [&](double th) { return x(t + th); }, split, 0.0);
    const Complex res = deriv - a * x(t) - b * x(t - tau) - c0 * integral;
    CHECK(std::abs(res) < 1e-10);
  }
}

TEST_CASE("evolution acts on histories") {
  const auto rule = default_rule(10);
  DdeProblem zero;
  const CVector s0 = evolve_state(zero, cosine(), 10, 10, rule);
  for (Eigen::Index i = 0; i < s0.size(); ++i) CHECK(std::abs(s0(i) - 1.0) < 1e-13);

  DdeProblem hayes;
  hayes.b = constant_coefficient(-1.0);
  const CVector s1 = evolve_state(hayes, constant(1.0), 10, 10, rule);
  const auto minus = history_nodes(10, 1.0);
  for (int j = 0; j <= 10; ++j) CHECK(std::abs(s1(j) + minus.node(j)) < 1e-13);
}

TEST_CASE("evolution is linear in the history") {
  DdeProblem p;
  p.a = constant_coefficient(0.4);
  p.b = constant_coefficient(-1.1);
  p.c = constant_kernel(0.3);
  const auto rule = default_rule(12);
  InitialFunction f = [](double th) { return CVector::Constant(1, std::exp(th)); };
  InitialFunction g = [](double th) { return CVector::Constant(1, th * th - 0.5); };
  InitialFunction h = [&](double th) { return CVector(2.0 * f(th) - 3.0 * g(th)); };
  const CVector lhs = evolve_state(p, h, 12, 12, rule);
  const CVector rhs = 2.0 * evolve_state(p, f, 12, 12, rule) - 3.0 * evolve_state(p, g, 12, 12, rule);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evolution agrees with sampling the collocation polynomial") {
  DdeProblem p;
  p.r = 1.5;
  p.b = constant_coefficient(-0.9);
  const auto rule = default_rule(14);
  const auto grids = make_grids(14, 10, 1.0, 1.5);
  const CVector state = evolve_state(p, cosine(), 14, 10, rule);
  const auto sol = collocation_solve(shift_problem(p), cosine(), grids, rule);
  for (int i = 0; i <= 10; ++i) {
    CHECK(std::abs(state(i) - sol(1.5 + grids.minus.node(i))(0)) < 1e-12);
  }
}

TEST_CASE("reference solver on problems with closed-form solutions") {
  const double h = 1e-2;
  SUBCASE("exponential") {
    const ReferenceSolution ref(scalar(1, 0, 0), constant(1.0), h);
    CHECK(std::abs(ref(1.0)(0) - std::exp(1.0)) < 5 * std::pow(h, 4));
  }
  SUBCASE("retarded") {
    const ReferenceSolution ref(scalar(0, -1, 0), constant(1.0), h);
    for (double t : {0.1, 0.5, 0.77, 1.0}) CHECK(std::abs(ref(t)(0) - (1.0 - t)) < 5 * std::pow(h, 4));
  }
  SUBCASE("trivial") {
    const ReferenceSolution ref(scalar(0, 0, 0), constant(2.0), h);
    CHECK(std::abs(ref(1.0)(0) - 2.0) < 1e-15);
  }
  SUBCASE("distributed") {
    const ReferenceSolution ref(scalar(0, 0, -1), constant(1.0), h);
    for (double t : {0.25, 0.5, 1.0}) {
      CHECK(std::abs(ref(t)(0) - (1.0 - std::sin(t))) < 5 * std::pow(h, 4));
    }
  }
  SUBCASE("history is returned for negative times") {
    const ReferenceSolution ref(scalar(0, -1, 0), cosine(), h);
    CHECK(ref(-0.3)(0) == std::cos(-0.3));
  }
}

TEST_CASE("reference solver converges at fourth order") {
  double prev = 0.0;
  for (double h : {0.05, 0.025, 0.0125}) {
    const ReferenceSolution ref(scalar(0.5, -1, 0), cosine(), h);
    const ReferenceSolution fine(scalar(0.5, -1, 0), cosine(), h / 8);
    const double err = std::abs(ref(1.0)(0) - fine(1.0)(0));
    if (prev > 0.0) CHECK(prev / err > 10.0);
    prev = err;
  }
  // y' = -y(t-1), y = cos on [-1, 0]: y(t) = 1 - sin(1) + sin(1 - t) on [0, 1].
  const auto exact = [](double t) { return 1.0 - std::sin(1.0) + std::sin(1.0 - t); };
  const ReferenceSolution ref(scalar(0, -1, 0), cosine(), 1e-3);
  for (double t : {0.2, 0.6, 1.0}) CHECK(std::abs(ref(t)(0) - exact(t)) < 1e-12);
}

TEST_CASE("reference solver argument checks") {
  CHECK_THROWS_AS(ReferenceSolution(scalar(0, -1, 0), constant(1.0), 0.0), InvalidArgument);
  CHECK_THROWS_AS(ReferenceSolution(scalar(0, -1, 0), constant(1.0), 0.5), InvalidArgument);
}

TEST_CASE("remainder estimate") {
  const auto rule = default_rule(20);
  SUBCASE("exact polynomial solution") {
    const auto grids = make_grids(6, 6, 1.0, 1.0);
    const auto est = remainder_estimate(scalar(0, -1, 0), constant(1.0), grids, rule, 1e-2);
    CHECK(est.rho < 1e-12);
    CHECK(est.solution_error < 1e-12);
  }
  SUBCASE("analytic solution converges spectrally") {
    // N = 8 already sits well above the round-off floor of the reference solver
    const auto e4 = remainder_estimate(scalar(1, 0, 0), constant(1.0), make_grids(4, 4, 1.0, 1.0), rule, 1e-4);
    const auto e8 = remainder_estimate(scalar(1, 0, 0), constant(1.0), make_grids(8, 8, 1.0, 1.0), rule, 1e-4);
    CHECK(e8.rho < 1e-4 * e4.rho);
    CHECK(e8.solution_error < 1e-4 * e4.solution_error);
  }
  SUBCASE("kinked history converges slowly") {
    InitialFunction kink = [](double th) { return CVector::Constant(1, std::abs(th + 0.5)); };
    const auto e8 = remainder_estimate(scalar(0, -1, 0), kink, make_grids(8, 8, 1.0, 1.0), rule, 1e-3);
    const auto e32 = remainder_estimate(scalar(0, -1, 0), kink, make_grids(32, 32, 1.0, 1.0), rule, 1e-3);
    CHECK(e32.rho < e8.rho);
    CHECK(e32.rho > 1e-6);
  }
  SUBCASE("error stays proportional to the remainder") {
    std::vector<double> ratios;
    for (int n : {4, 6, 8, 10}) {
      const auto est = remainder_estimate(scalar(0.5, -1, 0), cosine(), make_grids(n, n, 1.0, 1.0),
                                          rule, 1e-3);
      ratios.push_back(est.solution_error / est.rho);
    }
    const double first = ratios.front();
    for (double r : ratios) CHECK(r < 10.0 * first);
  }
}
