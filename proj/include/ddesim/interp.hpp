// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "ddesim/types.hpp"

namespace ddesim {

/// Distinct, strictly monotone interpolation nodes on [lo, hi] together with
/// their barycentric weights.
class NodeGrid {
 public:
  /// Throws InvalidArgument if the nodes are not strictly monotone or fall
  /// outside [lo, hi].
  NodeGrid(std::vector<double> nodes, double lo, double hi);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double node(std::size_t j) const { return nodes_[j]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// Index of the node equal to `t`, or -1.
  int node_index(double t) const noexcept;

  /// All Lagrange cardinals l_j(t).
  std::vector<double> basis(double t) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double lo_;
  double hi_;
};

/// N Chebyshev zeros mapped to (0, rs), ascending:
/// theta_i = rs/2 (1 - cos((2i-1) pi / (2N))), i = 1..N.
NodeGrid cheb_zero_nodes(int n, double rs);

/// M+1 Chebyshev-Lobatto points on [-tau, 0] in descending order,
/// 0 = theta_0 > ... > theta_M = -tau.
NodeGrid history_nodes(int m, double tau);

/// w_j = 1 / prod_{k != j} (x_j - x_k), up to a common positive factor.
/// Throws InvalidArgument on duplicate nodes.
std::vector<double> bary_weights(std::span<const double> nodes);

/// Value of the interpolating polynomial through (nodes, values) at t.
Complex interp_eval(const NodeGrid& grid, std::span<const Complex> values, double t);

/// Block version: `values` stores grid.size() contiguous blocks of length dim.
CVector interp_eval(const NodeGrid& grid, const CVector& values, int dim, double t);

/// Row (l_0'(t), ..., l_n'(t)).
std::vector<double> basis_deriv_row(const NodeGrid& grid, double t);

/// Estimate of max_t sum_j |l_j(t)| on `samples` equispaced points of the
/// grid interval (endpoints included).
double lebesgue_constant(const NodeGrid& grid, int samples);

/// History grid on [-tau, 0] and collocation grid on (0, rs), plus the
/// collocation grid augmented with the auxiliary node 0.
struct GridPair {
  NodeGrid minus;
  NodeGrid plus;
  NodeGrid plus0;
  double tau;
  double rs;

  int n() const noexcept { return static_cast<int>(plus.size()); }
  int m() const noexcept { return static_cast<int>(minus.size()) - 1; }
};

GridPair make_grids(int n, int m, double tau, double rs);

}  // namespace ddesim
