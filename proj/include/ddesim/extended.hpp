// SPDX-License-Identifier: Apache-2.0
//
// Multipliers with the discretization carried out in quadruple precision.
// Double-precision round-off floors the dominant-multiplier error near 1e-15,
// which hides the tail of spectral convergence; this path exposes it.
#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "ddesim/model.hpp"
#include "ddesim/quad.hpp"

namespace ddesim {

/// IEEE binary128 layout (113-bit significand), software arithmetic.
using Quad = boost::multiprecision::cpp_bin_float_quad;
using QuadComplex = std::complex<Quad>;

/// Nonzero multipliers of T_{M,N} (same ordering and zero threshold as
/// `multipliers`), with nodes, weights, quadrature, assembly, LU and the
/// eigensolver all in Quad. Coefficients are evaluated in double and promoted,
/// so the problem solved is the one with double-rounded coefficient values.
/// `rule` selects the quadrature kind and point count; its abscissae are
/// regenerated in Quad. Throws InvalidArgument, SingularMatrixError.
std::vector<QuadComplex> multipliers_quad(const DdeProblem& problem, int n, int m,
                                          const QuadratureRule& rule,
                                          double zero_rel_tol = 1e-10);

}  // namespace ddesim
