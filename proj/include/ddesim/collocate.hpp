// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "ddesim/evolution.hpp"
#include "ddesim/interp.hpp"
#include "ddesim/model.hpp"
#include "ddesim/quad.hpp"
#include "ddesim/types.hpp"

namespace ddesim {

/// Initial function theta -> d-vector on [-tau, 0].
using InitialFunction = std::function<CVector(double theta)>;

/// Sample of phi on the history grid, node-major.
CVector sample_history(const InitialFunction& phi, const NodeGrid& minus, int dim);

/// Degree-N collocation polynomial on [0, rs], stored by its values at
/// {0} and the collocation nodes.
struct CollocationSolution {
  NodeGrid grid;
  CVector nodal_values;
  int dim = 1;

  CVector operator()(double t) const { return interp_eval(grid, nodal_values, dim, t); }
};

CollocationSolution collocation_solve(const ShiftedProblem& problem, const InitialFunction& phi,
                                      const GridPair& grids, const QuadratureRule& rule,
                                      const EvolutionOptions& opts = {});

/// Discrete state at r: t_matrix applied to the nodal sample of phi.
CVector evolve_state(const DdeProblem& problem, const InitialFunction& phi, int n, int m,
                     const QuadratureRule& rule);

/// Method-of-steps solution of the shifted problem with a classical RK4
/// integrator on a mesh aligned with multiples of tau. Between mesh points the
/// solution is represented by cubic Hermite interpolation.
class ReferenceSolution {
 public:
  ReferenceSolution(ShiftedProblem problem, InitialFunction phi, double h);

  /// Effective step (tau divided by an integer).
  double step() const noexcept { return h_; }
  const std::vector<double>& mesh() const noexcept { return mesh_; }
  const std::vector<CVector>& samples() const noexcept { return values_; }

  /// y(t) for t in [-tau, rs]; phi on [-tau, 0].
  CVector operator()(double t) const;
  /// y'(t) for t in [0, rs], from the right-hand side of the equation.
  CVector derivative(double t) const;

 private:
  struct Cell;
  CVector history(double u, const Cell* current) const;
  CVector rhs(double t, const CVector& y, const Cell* current) const;

  ShiftedProblem problem_;
  InitialFunction phi_;
  double h_;
  std::vector<double> mesh_;
  std::vector<CVector> values_;
  std::vector<CVector> derivs_;
};

ReferenceSolution reference_solution(const ShiftedProblem& problem, const InitialFunction& phi,
                                     double h);

struct RemainderEstimate {
  double rho = 0.0;             ///< sup |y' - L_N y'| with y' from the reference solution
  double solution_error = 0.0;  ///< sup |y - p_N| on [0, rs]
};

/// Both quantities are sup-norms over `samples` equispaced points of [0, rs].
RemainderEstimate remainder_estimate(const ShiftedProblem& problem, const InitialFunction& phi,
                                     const GridPair& grids, const QuadratureRule& rule, double h,
                                     int samples = 1001);

}  // namespace ddesim
