// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddesim/types.hpp"

namespace ddesim {

enum class QuadratureKind { gauss_legendre, clenshaw_curtis };

std::string to_string(QuadratureKind kind);
QuadratureKind quadrature_kind_from_string(std::string_view name);

/// Interpolatory rule on the reference interval [-1, 1].
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::gauss_legendre;
  int points = 0;
  std::vector<double> abscissae;
  std::vector<double> weights;

  /// Highest monomial degree integrated exactly.
  int exactness_degree() const noexcept;
};

/// Gauss-Legendre nodes by Newton iteration on P_n; weights 2/((1-x^2) P_n'(x)^2).
QuadratureRule gauss_legendre(int points);

/// Clenshaw-Curtis rule on the Chebyshev extreme points (points >= 2), or the
/// midpoint rule for a single point.
QuadratureRule clenshaw_curtis(int points);

QuadratureRule make_rule(QuadratureKind kind, int points);

/// Gauss-Legendre with max(ceil((degree + 3) / 2), 8) points, where `degree`
/// is the highest polynomial degree of the collocation/history bases.
QuadratureRule default_rule(int degree);

/// Integral of f over [lo, hi] by the affine image of `rule`. `f` may return
/// a scalar or any Eigen expression; an empty window yields exact zero.
template <class F>
auto integrate(const QuadratureRule& rule, F&& f, double lo, double hi) {
  using R = std::decay_t<decltype(f(lo))>;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  if constexpr (std::is_arithmetic_v<R> || std::is_same_v<R, Complex>) {
    R acc{};
    if (half == 0.0) return acc;
    for (std::size_t k = 0; k < rule.abscissae.size(); ++k) {
      acc += rule.weights[k] * f(mid + half * rule.abscissae[k]);
    }
    return R(acc * half);
  } else {
    using P = typename R::PlainObject;
    P acc = f(mid + half * rule.abscissae.front());
    if (half == 0.0) {
      acc.setZero();
      return acc;
    }
    acc *= rule.weights.front();
    for (std::size_t k = 1; k < rule.abscissae.size(); ++k) {
      acc += rule.weights[k] * f(mid + half * rule.abscissae[k]);
    }
    acc *= half;
    return acc;
  }
}

}  // namespace ddesim
