// SPDX-License-Identifier: Apache-2.0
//
// Precision-generic numerical kernels shared by the double-precision API and
// the extended-precision convergence path. `Real` is double or a
// Boost.Multiprecision floating type; math functions are found by ADL.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ddesim/model.hpp"
#include "ddesim/types.hpp"

namespace ddesim::kernels {

template <class Real>
using ComplexT = std::complex<Real>;

template <class Real>
using CMatrixT = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
Real pi() {
  using std::acos;
  return acos(Real(-1));
}

/// Chebyshev zeros on (0, rs), ascending. The cosine is written as a sine so
/// that symmetric nodes are exact mirror images.
template <class Real>
std::vector<Real> cheb_zero_points(int n, const Real& rs) {
  using std::sin;
  std::vector<Real> x(n);
  for (int i = 1; i <= n; ++i) {
    const Real c = sin(pi<Real>() * (n - 2 * i + 1) / (2 * n));
    x[i - 1] = rs * (1 - c) / 2;
  }
  return x;
}

/// Chebyshev extrema on [-tau, 0], descending from 0 to -tau with exact ends.
template <class Real>
std::vector<Real> history_points(int m, const Real& tau) {
  using std::sin;
  std::vector<Real> x(m + 1);
  for (int j = 0; j <= m; ++j) {
    const Real c = sin(pi<Real>() * (m - 2 * j) / (2 * m));
    x[j] = tau * (c - 1) / 2;
  }
  x.front() = Real(0);
  x.back() = -tau;
  return x;
}

/// Barycentric weights 1 / prod_{k != j} (x_j - x_k), up to a common factor.
/// Throws InvalidArgument on duplicate nodes.
template <class Real>
std::vector<Real> bary_weights(std::span<const Real> nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) return {};
  const auto [mn, mx] = std::minmax_element(nodes.begin(), nodes.end());
  const Real length = *mx - *mn;
  // Capacity scaling keeps the products O(1) for large n.
  const Real scale = length > 0 ? Real(4) / length : Real(1);
  std::vector<Real> w(n, Real(1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const Real diff = nodes[j] - nodes[k];
      if (diff == 0) throw InvalidArgument("duplicate interpolation nodes");
      w[j] *= scale * diff;
    }
    w[j] = 1 / w[j];
  }
  return w;
}

template <class Real>
int node_index(std::span<const Real> nodes, const Real& t) {
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (nodes[j] == t) return static_cast<int>(j);
  }
  return -1;
}

/// Cardinal functions l_j(t), second barycentric form.
template <class Real>
std::vector<Real> basis(std::span<const Real> x, std::span<const Real> w, const Real& t) {
  const std::size_t n = x.size();
  std::vector<Real> l(n, Real(0));
  if (const int k = node_index(x, t); k >= 0) {
    l[k] = Real(1);
    return l;
  }
  Real denom(0);
  for (std::size_t j = 0; j < n; ++j) {
    l[j] = w[j] / (t - x[j]);
    denom += l[j];
  }
  for (auto& v : l) v /= denom;
  return l;
}

/// Derivatives l_j'(t). At a node the rows of the differentiation matrix are
/// used, with the diagonal set by the negative row sum.
template <class Real>
std::vector<Real> basis_derivatives(std::span<const Real> x, std::span<const Real> w, const Real& t) {
  const std::size_t n = x.size();
  std::vector<Real> row(n, Real(0));
  if (n == 1) return row;
  if (const int i = node_index(x, t); i >= 0) {
    Real diag(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(j) == i) continue;
      row[j] = (w[j] / w[i]) / (x[i] - x[j]);
      diag -= row[j];
    }
    row[i] = diag;
    return row;
  }
  // l_j'(t) = l_j(t) * (-1/(t - x_j) - s'(t)/s(t)), s(t) = sum_k w_k/(t - x_k).
  Real s(0), ds(0);
  for (std::size_t k = 0; k < n; ++k) {
    const Real q = w[k] / (t - x[k]);
    s += q;
    ds -= q / (t - x[k]);
  }
  const Real ratio = ds / s;
  for (std::size_t j = 0; j < n; ++j) {
    const Real lj = (w[j] / (t - x[j])) / s;
    row[j] = lj * (-1 / (t - x[j]) - ratio);
  }
  return row;
}

/// Abscissae and weights on [-1, 1].
template <class Real>
struct RuleData {
  std::vector<Real> x;
  std::vector<Real> w;
};

template <class Real>
RuleData<Real> gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  RuleData<Real> out{std::vector<Real>(n, Real(0)), std::vector<Real>(n, Real(0))};
  // (P_n(x), P_n'(x)) by the three-term recurrence.
  auto legendre = [n](const Real& x) {
    Real p0(1), p1 = x;
    for (int k = 2; k <= n; ++k) {
      Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair<Real, Real>{p1, n * (x * p1 - p0) / (x * x - 1)};
  };
  const Real tol = 4 * std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    Real x = cos(pi<Real>() * (4 * i + 3) / (4 * n + 2));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const Real dx = p / dp;
      x -= dx;
      if (abs(dx) <= tol) break;
    }
    const Real dp = legendre(x).second;
    const Real w = 2 / ((1 - x * x) * dp * dp);
    out.x[i] = -x;
    out.x[n - 1 - i] = x;
    out.w[i] = w;
    out.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) out.x[n / 2] = Real(0);
  return out;
}

template <class Real>
RuleData<Real> clenshaw_curtis(int points) {
  using std::cos;
  using std::sin;
  if (points == 1) return {{Real(0)}, {Real(2)}};
  const int n = points - 1;
  RuleData<Real> out{std::vector<Real>(points, Real(0)), std::vector<Real>(points, Real(0))};
  for (int k = 0; k <= n; ++k) {
    // -cos(k pi / n) as a sine for exact symmetry, ascending order.
    out.x[k] = -sin(pi<Real>() * (n - 2 * k) / (2 * n));
    const Real theta = pi<Real>() * k / n;
    Real sum(0);
    for (int j = 1; j <= n / 2; ++j) {
      const int b = (2 * j == n) ? 1 : 2;
      sum += b * cos(2 * j * theta) / (4 * j * j - 1);
    }
    const int c = (k == 0 || k == n) ? 1 : 2;
    out.w[k] = c * (1 - sum) / n;
  }
  return out;
}

/// Nodes and barycentric weights of one grid.
template <class Real>
struct Grid {
  std::vector<Real> x;
  std::vector<Real> w;

  std::vector<Real> basis(const Real& t) const { return kernels::basis<Real>(x, w, t); }
  std::vector<Real> derivatives(const Real& t) const {
    return kernels::basis_derivatives<Real>(x, w, t);
  }
};

template <class Real>
Grid<Real> make_grid(std::vector<Real> x) {
  auto w = bary_weights<Real>(x);
  return {std::move(x), std::move(w)};
}

/// Number of collocation nodes (plus0 indices 1..n) with x - tau <= 0.
template <class Real>
int count_early(const Grid<Real>& plus0, const Real& tau) {
  int last = 0;
  for (std::size_t j = 1; j < plus0.x.size(); ++j) {
    if (plus0.x[j] - tau <= 0) last = static_cast<int>(j);
  }
  return last;
}

/// Last history index j with rs + x_j >= 0.
template <class Real>
int count_inside(const Grid<Real>& minus, const Real& rs) {
  int last = 0;
  for (std::size_t j = 0; j < minus.x.size(); ++j) {
    if (rs + minus.x[j] >= 0) last = static_cast<int>(j);
  }
  return last;
}

/// Promotes a coefficient block evaluated in double.
template <class Real>
CMatrixT<Real> promote(const CMatrix& m) {
  if constexpr (std::is_same_v<Real, double>) {
    return m;
  } else {
    CMatrixT<Real> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out(i, j) = ComplexT<Real>(Real(m(i, j).real()), Real(m(i, j).imag()));
      }
    }
    return out;
  }
}

template <class Real>
double to_double(const Real& v) {
  return static_cast<double>(v);
}

// block(row, j) += factor * coef * basis[j] for every j.
template <class Real>
void add_row_blocks(CMatrixT<Real>& mat, int row_block, const CMatrixT<Real>& coef,
                    const std::vector<Real>& basis, const Real& factor) {
  const auto d = coef.rows();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j] == 0) continue;
    const ComplexT<Real> scale(factor * basis[j], Real(0));
    mat.block(row_block * d, static_cast<Eigen::Index>(j) * d, d, d) += scale * coef;
  }
}

// Adds factor * int_lo^hi c(t, sigma) l_j(t + sigma) dsigma to the blocks of `row_block`.
template <class Real>
void add_distributed_term(CMatrixT<Real>& mat, int row_block, const ShiftedProblem& problem,
                          const Grid<Real>& grid, const RuleData<Real>& rule, const Real& t,
                          const Real& lo, const Real& hi, const Real& factor) {
  const Real half = (hi - lo) / 2;
  if (!(half > 0)) return;
  const Real mid = (hi + lo) / 2;
  for (std::size_t k = 0; k < rule.x.size(); ++k) {
    const Real sigma = mid + half * rule.x[k];
    const CMatrixT<Real> kernel = promote<Real>(problem.eval_c(to_double(t), to_double(sigma)));
    add_row_blocks<Real>(mat, row_block, kernel, grid.basis(t + sigma), factor * half * rule.w[k]);
  }
}

/// Collocation matrices (U+, U-) for the shifted problem on the given grids.
template <class Real>
std::pair<CMatrixT<Real>, CMatrixT<Real>> assemble_u(const ShiftedProblem& problem,
                                                     const Grid<Real>& minus,
                                                     const Grid<Real>& plus0,
                                                     const RuleData<Real>& rule, const Real& tau) {
  const int d = problem.dim;
  const int n = static_cast<int>(plus0.x.size()) - 1;
  const int m = static_cast<int>(minus.x.size()) - 1;
  CMatrixT<Real> u_plus = CMatrixT<Real>::Zero(d * (n + 1), d * (n + 1));
  CMatrixT<Real> u_minus = CMatrixT<Real>::Zero(d * (n + 1), d * (m + 1));
  const CMatrixT<Real> eye = CMatrixT<Real>::Identity(d, d);

  // p(0) = phi(0)
  u_plus.block(0, 0, d, d) = eye;
  u_minus.block(0, 0, d, d) = eye;

  const int n_plus = count_early(plus0, tau);
  for (int i = 1; i <= n; ++i) {
    const Real t = plus0.x[i];
    const double td = to_double(t);
    add_row_blocks<Real>(u_plus, i, eye, plus0.derivatives(t), Real(1));
    if (problem.a_s) u_plus.block(i * d, i * d, d, d) -= promote<Real>(problem.eval_a(td));

    const bool early = i <= n_plus;
    if (problem.b_s) {
      const CMatrixT<Real> b = promote<Real>(problem.eval_b(td));
      if (early) {
        add_row_blocks<Real>(u_minus, i, b, minus.basis(t - tau), Real(1));
      } else {
        add_row_blocks<Real>(u_plus, i, b, plus0.basis(t - tau), Real(-1));
      }
    }
    if (problem.c_s) {
      if (early) {
        add_distributed_term<Real>(u_plus, i, problem, plus0, rule, t, -t, Real(0), Real(-1));
        add_distributed_term<Real>(u_minus, i, problem, minus, rule, t, -tau, -t, Real(1));
      } else {
        add_distributed_term<Real>(u_plus, i, problem, plus0, rule, t, -tau, Real(0), Real(-1));
      }
    }
  }
  return {std::move(u_plus), std::move(u_minus)};
}

/// Restriction matrices (V+, V-).
template <class Real>
std::pair<CMatrixT<Real>, CMatrixT<Real>> assemble_v(const Grid<Real>& minus, const Grid<Real>& plus0,
                                                     const Real& rs, int d) {
  const int n = static_cast<int>(plus0.x.size()) - 1;
  const int m = static_cast<int>(minus.x.size()) - 1;
  const int m_minus = count_inside(minus, rs);
  CMatrixT<Real> v_plus = CMatrixT<Real>::Zero(d * (m + 1), d * (n + 1));
  CMatrixT<Real> v_minus = CMatrixT<Real>::Zero(d * (m + 1), d * (m + 1));
  const CMatrixT<Real> eye = CMatrixT<Real>::Identity(d, d);
  for (int i = 0; i <= m; ++i) {
    const Real t = rs + minus.x[i];
    if (i <= m_minus) {
      add_row_blocks<Real>(v_plus, i, eye, plus0.basis(t), Real(1));
    } else {
      add_row_blocks<Real>(v_minus, i, eye, minus.basis(t), Real(1));
    }
  }
  return {std::move(v_plus), std::move(v_minus)};
}

/// Descending modulus, then descending imaginary part, then descending real part.
template <class Real>
bool multiplier_order(const ComplexT<Real>& a, const ComplexT<Real>& b) {
  using std::abs;
  const Real ma = abs(a), mb = abs(b);
  if (ma != mb) return ma > mb;
  if (a.imag() != b.imag()) return a.imag() > b.imag();
  return a.real() > b.real();
}

}  // namespace ddesim::kernels
