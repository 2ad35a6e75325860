// SPDX-License-Identifier: Apache-2.0
#include "ddesim/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ddesim/kernels.hpp"

namespace ddesim {

int index_n_plus(const NodeGrid& plus_grid, double tau) {
  int last = 0;
  for (std::size_t j = 0; j < plus_grid.size(); ++j) {
    if (plus_grid.node(j) - tau <= 0.0) last = static_cast<int>(j) + 1;
  }
  return last;
}

int index_m_minus(const NodeGrid& minus_grid, double rs) {
  int last = 0;
  for (std::size_t j = 0; j < minus_grid.size(); ++j) {
    if (rs + minus_grid.node(j) >= 0.0) last = static_cast<int>(j);
  }
  return last;
}

namespace {

kernels::Grid<double> kernel_grid(const NodeGrid& g) {
  return {{g.nodes().begin(), g.nodes().end()}, {g.weights().begin(), g.weights().end()}};
}

}  // namespace

std::pair<CMatrix, CMatrix> assemble_u(const ShiftedProblem& problem, const GridPair& grids,
                                       const QuadratureRule& rule) {
  return kernels::assemble_u<double>(problem, kernel_grid(grids.minus), kernel_grid(grids.plus0),
                                     {rule.abscissae, rule.weights}, problem.tau);
}

std::pair<CMatrix, CMatrix> assemble_v(const GridPair& grids, int dim) {
  return kernels::assemble_v<double>(kernel_grid(grids.minus), kernel_grid(grids.plus0), grids.rs,
                                     dim);
}

Eigen::PartialPivLU<CMatrix> factor_collocation_matrix(const CMatrix& u_plus,
                                                       const EvolutionOptions& opts,
                                                       double* cond_estimate) {
  Eigen::PartialPivLU<CMatrix> lu(u_plus);
  // An exactly singular factor yields NaN; report it as zero.
  const double raw = lu.rcond();
  const double rcond = std::isnan(raw) ? 0.0 : raw;
  if (cond_estimate) {
    *cond_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  }
  if (!(rcond >= opts.min_rcond)) {
    std::ostringstream msg;
    msg << "collocation matrix of order " << u_plus.rows()
        << " is numerically singular (rcond " << rcond << "); increase N";
    throw SingularMatrixError(msg.str(), rcond);
  }
  return lu;
}

EvolutionMatrices evolution_matrix(const ShiftedProblem& problem, const GridPair& grids,
                                   const QuadratureRule& rule, const EvolutionOptions& opts) {
  EvolutionMatrices out;
  out.dim = problem.dim;
  out.n = grids.n();
  out.m = grids.m();
  out.tau = problem.tau;
  out.rs = problem.rs;
  out.n_plus = index_n_plus(grids.plus, problem.tau);
  out.m_minus = index_m_minus(grids.minus, problem.rs);
  std::tie(out.u_plus, out.u_minus) = assemble_u(problem, grids, rule);
  std::tie(out.v_plus, out.v_minus) = assemble_v(grids, problem.dim);

  const auto lu = factor_collocation_matrix(out.u_plus, opts, &out.cond_estimate);
  out.t_matrix = out.v_plus * lu.solve(out.u_minus) + out.v_minus;
  out.real_valued = out.t_matrix.imag().cwiseAbs().maxCoeff() == 0.0;
  return out;
}

EvolutionMatrices evolution_matrix(const DdeProblem& problem, int n, int m,
                                   const QuadratureRule& rule, const EvolutionOptions& opts) {
  if (n < 1 || m < 1) throw InvalidArgument("N and M must be at least 1");
  const ShiftedProblem shifted = shift_problem(problem);
  if (!(shifted.rs > 0.0)) throw InvalidArgument("window length r - s must be positive");
  const GridPair grids = make_grids(n, m, shifted.tau, shifted.rs);
  return evolution_matrix(shifted, grids, rule, opts);
}

EvolutionMatrices evolution_matrix(const DdeProblem& problem, int n, int m) {
  return evolution_matrix(problem, n, m, default_rule(std::max(n, m)));
}

}  // namespace ddesim
