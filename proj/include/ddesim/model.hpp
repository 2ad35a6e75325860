// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ddesim/expr.hpp"
#include "ddesim/types.hpp"

namespace ddesim {

/// Pointwise coefficient t -> d x d matrix. An empty function means the
/// coefficient is identically zero.
using PointCoefficient = std::function<CMatrix(double t)>;
/// Kernel (t, theta) -> d x d matrix, theta in [-tau, 0]. Empty means zero.
using KernelCoefficient = std::function<CMatrix(double t, double theta)>;

/// Linear nonautonomous DDE on the window [s, r]:
///
///     x'(t) = a(t) x(t) + b(t) x(t - tau) + int_{-tau}^0 c(t, theta) x(t + theta) dtheta
///
/// Values are immutable after construction; the coefficient callables must
/// be reentrant.
struct DdeProblem {
  int dim = 1;
  double tau = 1.0;
  double s = 0.0;
  double r = 1.0;
  PointCoefficient a;
  PointCoefficient b;
  KernelCoefficient c;

  /// Throws InvalidArgument when r < s, tau <= 0 or dim < 1.
  void validate() const;

  CMatrix eval_a(double t) const;
  CMatrix eval_b(double t) const;
  CMatrix eval_c(double t, double theta) const;
};

/// The same problem after the time translation t -> s + t, posed on [0, rs].
struct ShiftedProblem {
  int dim = 1;
  double tau = 1.0;
  double rs = 1.0;
  PointCoefficient a_s;
  PointCoefficient b_s;
  KernelCoefficient c_s;

  CMatrix eval_a(double t) const;
  CMatrix eval_b(double t) const;
  CMatrix eval_c(double t, double theta) const;
};

ShiftedProblem shift_problem(const DdeProblem& p);

/// Builds a point coefficient from a dim x dim grid of expressions in `t`.
/// `entries` is row-major and must have dim*dim elements.
PointCoefficient expression_coefficient(std::vector<CoefficientExpr> entries, int dim);

/// Kernel coefficient from a dim x dim grid of expressions in `t`, `theta`.
KernelCoefficient expression_kernel(std::vector<CoefficientExpr> entries, int dim);

/// Parses a matrix literal "e11, e12; e21, e22" (rows separated by ';',
/// columns by ','). A scalar expression is accepted for dim == 1.
std::vector<CoefficientExpr> parse_coefficient_grid(const std::string& text, int dim,
                                                    bool allow_theta);

/// Constant scalar coefficient helpers for the d == 1 builtins.
PointCoefficient constant_coefficient(double value);
KernelCoefficient constant_kernel(double value);

}  // namespace ddesim
