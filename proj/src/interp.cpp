// SPDX-License-Identifier: Apache-2.0
#include "ddesim/interp.hpp"

#include <algorithm>
#include <cmath>

#include "ddesim/kernels.hpp"

namespace ddesim {

namespace {

bool strictly_monotone(const std::vector<double>& x) {
  if (x.size() < 2) return true;
  const bool up = x[1] > x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (up ? !(x[i] > x[i - 1]) : !(x[i] < x[i - 1])) return false;
  }
  return true;
}

}  // namespace

NodeGrid::NodeGrid(std::vector<double> nodes, double lo, double hi)
    : nodes_(std::move(nodes)), lo_(lo), hi_(hi) {
  if (nodes_.empty()) throw InvalidArgument("node grid must not be empty");
  if (!(lo <= hi)) throw InvalidArgument("node grid interval is reversed");
  if (!strictly_monotone(nodes_)) throw InvalidArgument("grid nodes must be strictly monotone");
  for (double x : nodes_) {
    if (!(x >= lo && x <= hi)) throw InvalidArgument("grid node outside its interval");
  }
  weights_ = bary_weights(nodes_);
}

int NodeGrid::node_index(double t) const noexcept {
  return kernels::node_index<double>(nodes_, t);
}

std::vector<double> NodeGrid::basis(double t) const {
  return kernels::basis<double>(nodes_, weights_, t);
}

NodeGrid cheb_zero_nodes(int n, double rs) {
  if (n < 1) throw InvalidArgument("collocation degree must be at least 1");
  if (!(rs > 0.0)) throw InvalidArgument("collocation interval length must be positive");
  return NodeGrid(kernels::cheb_zero_points<double>(n, rs), 0.0, rs);
}

NodeGrid history_nodes(int m, double tau) {
  if (m < 1) throw InvalidArgument("history degree must be at least 1");
  if (!(tau > 0.0)) throw InvalidArgument("delay must be positive");
  return NodeGrid(kernels::history_points<double>(m, tau), -tau, 0.0);
}

std::vector<double> bary_weights(std::span<const double> nodes) {
  return kernels::bary_weights<double>(nodes);
}

Complex interp_eval(const NodeGrid& grid, std::span<const Complex> values, double t) {
  if (values.size() != grid.size()) throw InvalidArgument("value count does not match grid size");
  if (const int k = grid.node_index(t); k >= 0) return values[k];
  const auto x = grid.nodes();
  const auto w = grid.weights();
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double q = w[j] / (t - x[j]);
    num += q * values[j];
    den += q;
  }
  return num / den;
}

CVector interp_eval(const NodeGrid& grid, const CVector& values, int dim, double t) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (values.size() != n * dim) throw InvalidArgument("value count does not match grid size");
  if (const int k = grid.node_index(t); k >= 0) return values.segment(k * dim, dim);
  const auto l = grid.basis(t);
  CVector out = CVector::Zero(dim);
  for (Eigen::Index j = 0; j < n; ++j) out += l[j] * values.segment(j * dim, dim);
  return out;
}

std::vector<double> basis_deriv_row(const NodeGrid& grid, double t) {
  return kernels::basis_derivatives<double>(grid.nodes(), grid.weights(), t);
}

double lebesgue_constant(const NodeGrid& grid, int samples) {
  if (samples < 10 * static_cast<int>(grid.size())) {
    throw InvalidArgument("lebesgue_constant needs at least 10 samples per node");
  }
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = grid.lo() + (grid.hi() - grid.lo()) * k / (samples - 1);
    double sum = 0.0;
    for (double l : grid.basis(t)) sum += std::abs(l);
    best = std::max(best, sum);
  }
  return best;
}

GridPair make_grids(int n, int m, double tau, double rs) {
  NodeGrid plus = cheb_zero_nodes(n, rs);
  std::vector<double> with_zero;
  with_zero.reserve(n + 1);
  with_zero.push_back(0.0);
  with_zero.insert(with_zero.end(), plus.nodes().begin(), plus.nodes().end());
  NodeGrid plus0(std::move(with_zero), 0.0, rs);
  return GridPair{history_nodes(m, tau), std::move(plus), std::move(plus0), tau, rs};
}

}  // namespace ddesim
