// SPDX-License-Identifier: Apache-2.0
#include "ddesim/quad.hpp"

#include <algorithm>
#include <utility>

#include "ddesim/kernels.hpp"

namespace ddesim {

std::string to_string(QuadratureKind kind) {
  return kind == QuadratureKind::gauss_legendre ? "gauss_legendre" : "clenshaw_curtis";
}

QuadratureKind quadrature_kind_from_string(std::string_view name) {
  if (name == "gauss_legendre") return QuadratureKind::gauss_legendre;
  if (name == "clenshaw_curtis") return QuadratureKind::clenshaw_curtis;
  throw InvalidArgument("unknown quadrature rule '" + std::string(name) + "'");
}

int QuadratureRule::exactness_degree() const noexcept {
  if (kind == QuadratureKind::gauss_legendre) return 2 * points - 1;
  return points >= 2 ? points - 1 : 1;
}

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw InvalidArgument("quadrature needs at least one point");
  auto data = kernels::gauss_legendre<double>(points);
  return {QuadratureKind::gauss_legendre, points, std::move(data.x), std::move(data.w)};
}

QuadratureRule clenshaw_curtis(int points) {
  if (points < 1) throw InvalidArgument("quadrature needs at least one point");
  auto data = kernels::clenshaw_curtis<double>(points);
  return {QuadratureKind::clenshaw_curtis, points, std::move(data.x), std::move(data.w)};
}

QuadratureRule make_rule(QuadratureKind kind, int points) {
  return kind == QuadratureKind::gauss_legendre ? gauss_legendre(points) : clenshaw_curtis(points);
}

QuadratureRule default_rule(int degree) {
  const int points = std::max((degree + 4) / 2, 8);
  return gauss_legendre(points);
}

}  // namespace ddesim
