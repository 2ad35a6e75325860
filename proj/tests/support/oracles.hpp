// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for the test suites. Nothing here calls
// into the library; the routines are deliberately naive.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// l_j(t) by the raw product formula.
inline double cardinal(const std::vector<double>& x, std::size_t j, double t) {
  double v = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k != j) v *= (t - x[k]) / (x[j] - x[k]);
  }
  return v;
}

/// l_j'(t) by the product rule.
inline double cardinal_derivative(const std::vector<double>& x, std::size_t j, double t) {
  double sum = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) {
    if (m == j) continue;
    double term = 1.0 / (x[j] - x[m]);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k != j && k != m) term *= (t - x[k]) / (x[j] - x[k]);
    }
    sum += term;
  }
  return sum;
}

/// Plain complex Newton iteration; returns the last iterate.
inline Complex newton(const std::function<Complex(Complex)>& f,
                      const std::function<Complex(Complex)>& df, Complex z, int iters = 100) {
  for (int i = 0; i < iters; ++i) {
    const Complex step = f(z) / df(z);
    z -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

/// Root of lambda = a + b exp(-lambda tau) near `start`.
inline Complex retarded_root(double a, double b, double tau, Complex start) {
  return newton([&](Complex l) { return l - a - b * std::exp(-l * tau); },
                [&](Complex l) { return 1.0 + b * tau * std::exp(-l * tau); }, start);
}

/// Same root in an arbitrary floating type, iterated to that type's round-off.
template <class Real>
std::complex<Real> retarded_root_in(const Real& a, const Real& b, const Real& tau,
                                    std::complex<Real> z) {
  using std::abs;
  using std::exp;
  const Real tol = 2 * std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < 100; ++i) {
    const std::complex<Real> e = exp(-z * tau);
    const std::complex<Real> step = (z - a - b * e) / (std::complex<Real>(1) + b * tau * e);
    z -= step;
    if (abs(step) <= tol * (1 + abs(z))) break;
  }
  return z;
}

/// Nonzero root of lambda^2 = c0 (1 - exp(-lambda)) near `start` (tau = 1).
inline Complex distributed_root(double c0, Complex start) {
  return newton([&](Complex l) { return l * l - c0 * (1.0 - std::exp(-l)); },
                [&](Complex l) { return 2.0 * l - c0 * std::exp(-l); }, start);
}

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double horner(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

inline double horner_derivative(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) v = v * t + k * coeffs[k];
  return v;
}

}  // namespace oracle
