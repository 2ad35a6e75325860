// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "ddesim/types.hpp"

namespace ddesim::harness {

/// Characteristic function of the scalar autonomous equation
///   x'(t) = a x(t) + b x(t - tau) + c0 int_{-tau}^0 x(t + theta) dtheta,
/// i.e. h(lambda) = lambda - a - b e^{-lambda tau} - c0 (1 - e^{-lambda tau}) / lambda,
/// with the removable singularity at lambda = 0 handled by series.
struct CharacteristicEquation {
  double a = 0.0;
  double b = 0.0;
  double c0 = 0.0;
  double tau = 1.0;

  Complex value(Complex lambda) const;
  Complex derivative(Complex lambda) const;
};

struct RootSearch {
  double re_min = -4.0;
  double im_max = 0.0;   ///< 0 selects a bound from the coefficients
  double spacing = 0.5;  ///< start-grid spacing in both directions
  int max_iter = 200;
};

/// Roots found by Newton's method with deflation started from a grid of
/// points in the rectangle [re_min, re_max] x [0, im_max]. Conjugates are
/// included. Sorted by descending real part, then descending imaginary part.
/// Throws ConvergenceError when no root is found.
std::vector<Complex> characteristic_roots(const CharacteristicEquation& eq,
                                          const RootSearch& search = {});

/// Rightmost root with nonnegative imaginary part.
Complex rightmost_root(const CharacteristicEquation& eq, const RootSearch& search = {});

/// Newton refinement of a nonzero root in the arithmetic of `Real`, started
/// from a double-precision estimate. Coefficients are taken as exact.
template <class Real>
std::complex<Real> polish_root(const CharacteristicEquation& eq, std::complex<Real> z,
                               int max_iter = 30) {
  using std::abs;
  using std::exp;
  using C = std::complex<Real>;
  const Real a(eq.a), b(eq.b), c0(eq.c0), tau(eq.tau);
  const Real tol = 4 * std::numeric_limits<Real>::epsilon();
  for (int iter = 0; iter < max_iter; ++iter) {
    const C e = exp(-z * tau);
    C h = z - a - b * e;
    C dh = C(1) + b * tau * e;
    if (eq.c0 != 0.0) {
      // q(z) = (1 - e^{-z tau}) / z, q'(z) = (tau z e^{-z tau} - (1 - e^{-z tau})) / z^2
      h -= c0 * (C(1) - e) / z;
      dh -= c0 * (tau * z * e - (C(1) - e)) / (z * z);
    }
    const C step = h / dh;
    z -= step;
    if (abs(step) <= tol * std::max(Real(1), Real(abs(z)))) break;
  }
  return z;
}

}  // namespace ddesim::harness
