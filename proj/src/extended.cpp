// SPDX-License-Identifier: Apache-2.0
#include "ddesim/extended.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ddesim/kernels.hpp"

namespace ddesim {

namespace {

using QMatrix = kernels::CMatrixT<Quad>;
using QRealMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;

// Eigen's condition estimator needs NumTraits::infinity, which the Boost
// adaptor lacks; the pivot spread of the LU factor stands in for rcond.
void check_pivots(const Eigen::PartialPivLU<QMatrix>& lu) {
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const Quad largest = pivots.maxCoeff();
  const Quad smallest = pivots.minCoeff();
  const Quad ratio = largest > 0 ? smallest / largest : Quad(0);
  if (!(ratio > Quad(1e-30))) {
    std::ostringstream msg;
    msg << "collocation matrix of order " << lu.matrixLU().rows()
        << " is numerically singular in extended precision; increase N";
    throw SingularMatrixError(msg.str(), static_cast<double>(ratio));
  }
}

std::vector<QuadComplex> eigenvalues(const QMatrix& t) {
  std::vector<QuadComplex> out;
  const bool real = t.imag().cwiseAbs().maxCoeff() == 0;
  if (real) {
    const QRealMatrix r = t.real();
    Eigen::EigenSolver<QRealMatrix> es(r, false);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver did not converge");
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()[k]);
  } else {
    Eigen::ComplexEigenSolver<QMatrix> es(t, false);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver did not converge");
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()[k]);
  }
  return out;
}

}  // namespace

std::vector<QuadComplex> multipliers_quad(const DdeProblem& problem, int n, int m,
                                          const QuadratureRule& rule, double zero_rel_tol) {
  if (n < 1 || m < 1) throw InvalidArgument("N and M must be at least 1");
  if (rule.points < 1) throw InvalidArgument("quadrature needs at least one point");
  problem.validate();
  const ShiftedProblem shifted = shift_problem(problem);
  const Quad tau(problem.tau);
  const Quad rs = Quad(problem.r) - Quad(problem.s);
  if (!(rs > 0)) throw InvalidArgument("window length r - s must be positive");

  std::vector<Quad> plus = kernels::cheb_zero_points<Quad>(n, rs);
  plus.insert(plus.begin(), Quad(0));
  const auto plus0 = kernels::make_grid<Quad>(std::move(plus));
  const auto minus = kernels::make_grid<Quad>(kernels::history_points<Quad>(m, tau));
  const auto data = rule.kind == QuadratureKind::gauss_legendre
                        ? kernels::gauss_legendre<Quad>(rule.points)
                        : kernels::clenshaw_curtis<Quad>(rule.points);

  const auto [u_plus, u_minus] = kernels::assemble_u<Quad>(shifted, minus, plus0, data, tau);
  const auto [v_plus, v_minus] = kernels::assemble_v<Quad>(minus, plus0, rs, problem.dim);
  const Eigen::PartialPivLU<QMatrix> lu(u_plus);
  check_pivots(lu);
  const QMatrix t = v_plus * lu.solve(u_minus) + v_minus;

  std::vector<QuadComplex> all = eigenvalues(t);
  Quad radius(0);
  for (const auto& z : all) radius = std::max(radius, Quad(abs(z)));
  const Quad threshold = Quad(zero_rel_tol) * radius;
  std::vector<QuadComplex> out;
  for (const auto& z : all) {
    if (abs(z) > threshold) out.push_back(z);
  }
  std::stable_sort(out.begin(), out.end(), kernels::multiplier_order<Quad>);
  return out;
}

}  // namespace ddesim
