// SPDX-License-Identifier: Apache-2.0
#include "ddesim/collocate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ddesim {

CVector sample_history(const InitialFunction& phi, const NodeGrid& minus, int dim) {
  const auto n = static_cast<Eigen::Index>(minus.size());
  CVector out(n * dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    const CVector v = phi(minus.node(j));
    if (v.size() != dim) throw InvalidArgument("initial function has wrong dimension");
    out.segment(j * dim, dim) = v;
  }
  return out;
}

CollocationSolution collocation_solve(const ShiftedProblem& problem, const InitialFunction& phi,
                                      const GridPair& grids, const QuadratureRule& rule,
                                      const EvolutionOptions& opts) {
  const auto [u_plus, u_minus] = assemble_u(problem, grids, rule);
  const auto lu = factor_collocation_matrix(u_plus, opts);
  const CVector rhs = u_minus * sample_history(phi, grids.minus, problem.dim);
  return CollocationSolution{grids.plus0, lu.solve(rhs), problem.dim};
}

CVector evolve_state(const DdeProblem& problem, const InitialFunction& phi, int n, int m,
                     const QuadratureRule& rule) {
  const EvolutionMatrices mats = evolution_matrix(problem, n, m, rule);
  const NodeGrid minus = history_nodes(m, problem.tau);
  return mats.t_matrix * sample_history(phi, minus, problem.dim);
}

// ---------------------------------------------------------------------------
// Method of steps

struct ReferenceSolution::Cell {
  double t0, t1;
  CVector y0, f0, y1, f1;

  CVector eval(double u) const {
    const double hs = t1 - t0;
    if (hs <= 0.0) return y0;
    const double s = (u - t0) / hs;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y0 + (h10 * hs) * f0 + h01 * y1 + (h11 * hs) * f1;
  }
};

namespace {

// 3-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 3> kGaussX{-0.7745966692414833770, 0.0, 0.7745966692414833770};
constexpr std::array<double, 3> kGaussW{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

}  // namespace

ReferenceSolution::ReferenceSolution(ShiftedProblem problem, InitialFunction phi, double h)
    : problem_(std::move(problem)), phi_(std::move(phi)) {
  const double tau = problem_.tau;
  if (!(h > 0.0) || h > tau / 4.0) throw InvalidArgument("reference step must satisfy 0 < h <= tau/4");
  h_ = tau / std::ceil(tau / h - 1e-12);

  const int d = problem_.dim;
  const double rs = problem_.rs;
  mesh_.push_back(0.0);
  const CVector y0 = phi_(0.0);
  if (y0.size() != d) throw InvalidArgument("initial function has wrong dimension");
  values_.push_back(y0);
  Cell start{0.0, 0.0, y0, CVector::Zero(d), y0, CVector::Zero(d)};
  derivs_.push_back(rhs(0.0, y0, &start));

  // The current cell only enters through the distributed term; a linear
  // predictor plus two corrections keep the local error at fifth order.
  const int passes = problem_.c_s ? 3 : 1;
  for (std::size_t n = 0; mesh_.back() < rs; ++n) {
    const double t0 = mesh_.back();
    double t1 = std::min(rs, static_cast<double>(n + 1) * h_);
    if (rs - t1 < 1e-9 * h_) t1 = rs;
    const double hs = t1 - t0;
    const CVector& yn = values_.back();
    const CVector& fn = derivs_.back();
    Cell cur{t0, t1, yn, fn, yn + hs * fn, fn};
    for (int pass = 0; pass < passes; ++pass) {
      const CVector k1 = fn;
      const CVector k2 = rhs(t0 + 0.5 * hs, yn + (0.5 * hs) * k1, &cur);
      const CVector k3 = rhs(t0 + 0.5 * hs, yn + (0.5 * hs) * k2, &cur);
      const CVector k4 = rhs(t1, yn + hs * k3, &cur);
      cur.y1 = yn + (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      cur.f1 = rhs(t1, cur.y1, &cur);
    }
    mesh_.push_back(t1);
    values_.push_back(cur.y1);
    derivs_.push_back(cur.f1);
  }
}

CVector ReferenceSolution::history(double u, const Cell* current) const {
  if (u <= 0.0) return phi_(u);
  const std::size_t cells = mesh_.size() - 1;
  if (cells == 0 && !current) return values_.front();
  auto k = static_cast<std::size_t>(std::floor(u / h_));
  if (current && k >= cells) return current->eval(u);
  k = std::min(k, cells - 1);
  const Cell cell{mesh_[k], mesh_[k + 1], values_[k], derivs_[k], values_[k + 1], derivs_[k + 1]};
  return cell.eval(u);
}

CVector ReferenceSolution::rhs(double t, const CVector& y, const Cell* current) const {
  const int d = problem_.dim;
  const double tau = problem_.tau;
  CVector out = CVector::Zero(d);
  if (problem_.a_s) out += problem_.eval_a(t) * y;
  if (problem_.b_s) out += problem_.eval_b(t) * history(t - tau, current);
  if (problem_.c_s) {
    // Pieces of [t - tau, t] split at mesh multiples of h.
    double lo = t - tau;
    auto j = static_cast<long>(std::floor(lo / h_)) + 1;
    while (lo < t) {
      const double hi = std::min(t, static_cast<double>(j) * h_);
      ++j;
      if (hi - lo <= 1e-14 * h_) {
        lo = hi;
        continue;
      }
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (std::size_t q = 0; q < kGaussX.size(); ++q) {
        const double u = mid + half * kGaussX[q];
        out += (half * kGaussW[q]) * (problem_.eval_c(t, u - t) * history(u, current));
      }
      lo = hi;
    }
  }
  return out;
}

CVector ReferenceSolution::operator()(double t) const {
  if (t <= 0.0) return phi_(t);
  return history(t, nullptr);
}

CVector ReferenceSolution::derivative(double t) const { return rhs(t, (*this)(t), nullptr); }

ReferenceSolution reference_solution(const ShiftedProblem& problem, const InitialFunction& phi,
                                     double h) {
  return ReferenceSolution(problem, phi, h);
}

RemainderEstimate remainder_estimate(const ShiftedProblem& problem, const InitialFunction& phi,
                                     const GridPair& grids, const QuadratureRule& rule, double h,
                                     int samples) {
  if (samples < 2) throw InvalidArgument("remainder_estimate needs at least two samples");
  const int d = problem.dim;
  const ReferenceSolution ref(problem, phi, h);
  const CollocationSolution sol = collocation_solve(problem, phi, grids, rule);

  // Interpolant of y' on the collocation nodes alone (degree N-1).
  const auto n = static_cast<Eigen::Index>(grids.plus.size());
  CVector dnodal(n * d);
  for (Eigen::Index i = 0; i < n; ++i) {
    dnodal.segment(i * d, d) = ref.derivative(grids.plus.node(i));
  }

  RemainderEstimate out;
  for (int k = 0; k < samples; ++k) {
    const double t = problem.rs * k / (samples - 1);
    const CVector dy = ref.derivative(t);
    out.rho = std::max(out.rho, (dy - interp_eval(grids.plus, dnodal, d, t)).cwiseAbs().maxCoeff());
    out.solution_error = std::max(out.solution_error, (ref(t) - sol(t)).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace ddesim
