// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "ddesim/interp.hpp"
#include "ddesim/model.hpp"
#include "ddesim/quad.hpp"
#include "ddesim/types.hpp"

namespace ddesim {

/// Discretized evolution operator T(r,s) and the blocks it is built from.
///
/// Vectors are stored node-major: the value at node i occupies entries
/// [i*dim, (i+1)*dim). History vectors follow the descending order of the
/// history grid, so block 0 is the value at theta = 0.
struct EvolutionMatrices {
  CMatrix u_plus;    ///< d(N+1) x d(N+1) collocation matrix
  CMatrix u_minus;   ///< d(N+1) x d(M+1) history contribution
  CMatrix v_plus;    ///< d(M+1) x d(N+1) restriction of the collocation polynomial
  CMatrix v_minus;   ///< d(M+1) x d(M+1) shifted history, zero when rs >= tau
  CMatrix t_matrix;  ///< d(M+1) x d(M+1)
  int n_plus = 0;
  int m_minus = 0;
  double cond_estimate = 0.0;  ///< 1 / rcond of u_plus (1-norm estimate)
  int dim = 1;
  int n = 0;
  int m = 0;
  double tau = 0.0;
  double rs = 0.0;
  bool real_valued = false;  ///< all entries of t_matrix have zero imaginary part
};

/// Largest j in 1..N with plus[j] <= tau (1-based, over the grid without the
/// auxiliary node), or 0.
int index_n_plus(const NodeGrid& plus_grid, double tau);

/// Largest j in 0..M with rs + minus[j] >= 0.
int index_m_minus(const NodeGrid& minus_grid, double rs);

/// Collocation blocks (u_plus, u_minus) for the shifted problem.
std::pair<CMatrix, CMatrix> assemble_u(const ShiftedProblem& problem, const GridPair& grids,
                                       const QuadratureRule& rule);

/// Coefficient-independent restriction/prolongation blocks (v_plus, v_minus).
std::pair<CMatrix, CMatrix> assemble_v(const GridPair& grids, int dim = 1);

struct EvolutionOptions {
  /// u_plus is rejected when its reciprocal condition estimate drops below this.
  double min_rcond = 1e-14;
};

/// LU factorization of u_plus. Throws SingularMatrixError when the
/// reciprocal condition estimate is below opts.min_rcond.
Eigen::PartialPivLU<CMatrix> factor_collocation_matrix(const CMatrix& u_plus,
                                                       const EvolutionOptions& opts,
                                                       double* cond_estimate = nullptr);

/// T = V+ (U+)^{-1} U- + V-, via an LU factorization of U+.
EvolutionMatrices evolution_matrix(const ShiftedProblem& problem, const GridPair& grids,
                                   const QuadratureRule& rule, const EvolutionOptions& opts = {});

EvolutionMatrices evolution_matrix(const DdeProblem& problem, int n, int m,
                                   const QuadratureRule& rule, const EvolutionOptions& opts = {});

/// Same, with the default Gauss-Legendre rule for degree max(n, m).
EvolutionMatrices evolution_matrix(const DdeProblem& problem, int n, int m);

}  // namespace ddesim
