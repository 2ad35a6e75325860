// SPDX-License-Identifier: Apache-2.0
#include "ddesim/model.hpp"

#include <cmath>
#include <memory>
#include <string_view>

namespace ddesim {

void DdeProblem::validate() const {
  if (dim < 1) throw InvalidArgument("dimension must be at least 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("delay tau must be positive");
  if (!std::isfinite(s) || !std::isfinite(r)) throw InvalidArgument("window bounds must be finite");
  if (r < s) throw InvalidArgument("window end r must not precede start s");
}

namespace {

CMatrix checked(CMatrix m, int dim, const char* name) {
  if (m.rows() != dim || m.cols() != dim) {
    throw InvalidArgument(std::string("coefficient ") + name + " has wrong shape");
  }
  return m;
}

}  // namespace

CMatrix DdeProblem::eval_a(double t) const {
  return a ? checked(a(t), dim, "a") : CMatrix::Zero(dim, dim);
}
CMatrix DdeProblem::eval_b(double t) const {
  return b ? checked(b(t), dim, "b") : CMatrix::Zero(dim, dim);
}
CMatrix DdeProblem::eval_c(double t, double theta) const {
  return c ? checked(c(t, theta), dim, "c") : CMatrix::Zero(dim, dim);
}

CMatrix ShiftedProblem::eval_a(double t) const {
  return a_s ? checked(a_s(t), dim, "a") : CMatrix::Zero(dim, dim);
}
CMatrix ShiftedProblem::eval_b(double t) const {
  return b_s ? checked(b_s(t), dim, "b") : CMatrix::Zero(dim, dim);
}
CMatrix ShiftedProblem::eval_c(double t, double theta) const {
  return c_s ? checked(c_s(t, theta), dim, "c") : CMatrix::Zero(dim, dim);
}

ShiftedProblem shift_problem(const DdeProblem& p) {
  p.validate();
  ShiftedProblem out;
  out.dim = p.dim;
  out.tau = p.tau;
  out.rs = p.r - p.s;
  const double s = p.s;
  if (p.a) out.a_s = [a = p.a, s](double t) { return a(s + t); };
  if (p.b) out.b_s = [b = p.b, s](double t) { return b(s + t); };
  if (p.c) out.c_s = [c = p.c, s](double t, double theta) { return c(s + t, theta); };
  return out;
}

PointCoefficient expression_coefficient(std::vector<CoefficientExpr> entries, int dim) {
  if (static_cast<int>(entries.size()) != dim * dim) {
    throw InvalidArgument("coefficient grid must have dim*dim entries");
  }
  auto shared = std::make_shared<const std::vector<CoefficientExpr>>(std::move(entries));
  return [shared, dim](double t) {
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m(i, j) = (*shared)[i * dim + j].eval(t, 0.0);
    }
    return m;
  };
}

KernelCoefficient expression_kernel(std::vector<CoefficientExpr> entries, int dim) {
  if (static_cast<int>(entries.size()) != dim * dim) {
    throw InvalidArgument("kernel grid must have dim*dim entries");
  }
  auto shared = std::make_shared<const std::vector<CoefficientExpr>>(std::move(entries));
  return [shared, dim](double t, double theta) {
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m(i, j) = (*shared)[i * dim + j].eval(t, theta);
    }
    return m;
  };
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? at : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

}  // namespace

std::vector<CoefficientExpr> parse_coefficient_grid(const std::string& text, int dim,
                                                    bool allow_theta) {
  std::vector<CoefficientExpr> out;
  const auto rows = split(text, ';');
  if (static_cast<int>(rows.size()) != dim) {
    throw InvalidArgument("coefficient '" + text + "' must have " + std::to_string(dim) +
                          " row(s)");
  }
  for (const auto row : rows) {
    const auto cols = split(row, ',');
    if (static_cast<int>(cols.size()) != dim) {
      throw InvalidArgument("coefficient '" + text + "' must have " + std::to_string(dim) +
                            " column(s) per row");
    }
    for (const auto cell : cols) out.push_back(CoefficientExpr::parse(cell, allow_theta));
  }
  return out;
}

PointCoefficient constant_coefficient(double value) {
  return [value](double) { return CMatrix::Constant(1, 1, Complex(value, 0.0)); };
}

KernelCoefficient constant_kernel(double value) {
  return [value](double, double) { return CMatrix::Constant(1, 1, Complex(value, 0.0)); };
}

}  // namespace ddesim
