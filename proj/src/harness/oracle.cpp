// SPDX-License-Identifier: Apache-2.0
#include "ddesim/harness/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ddesim::harness {

namespace {

// g(z) = (1 - e^{-z tau}) / z and g'(z).
std::pair<Complex, Complex> window_integral(Complex z, double tau) {
  if (std::abs(z * tau) < 0.5) {
    Complex g = 0.0, dg = 0.0;
    Complex zk = 1.0;      // z^k
    Complex zkm1 = 0.0;    // z^{k-1}
    double fact = 1.0;     // (k+1)!
    double tk = tau;       // tau^{k+1}
    for (int k = 0; k < 40; ++k) {
      fact *= (k + 1);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      g += sign * zk * tk / fact;
      if (k >= 1) dg += sign * static_cast<double>(k) * zkm1 * tk / fact;
      zkm1 = zk;
      zk *= z;
      tk *= tau;
    }
    return {g, dg};
  }
  const Complex e = std::exp(-z * tau);
  const Complex g = (1.0 - e) / z;
  const Complex dg = (tau * e * z - (1.0 - e)) / (z * z);
  return {g, dg};
}

}  // namespace

Complex CharacteristicEquation::value(Complex lambda) const {
  Complex h = lambda - a - b * std::exp(-lambda * tau);
  if (c0 != 0.0) h -= c0 * window_integral(lambda, tau).first;
  return h;
}

Complex CharacteristicEquation::derivative(Complex lambda) const {
  Complex dh = 1.0 + b * tau * std::exp(-lambda * tau);
  if (c0 != 0.0) dh -= c0 * window_integral(lambda, tau).second;
  return dh;
}

std::vector<Complex> characteristic_roots(const CharacteristicEquation& eq, const RootSearch& search) {
  const double bound = std::abs(eq.a) + std::abs(eq.b) + std::abs(eq.c0) * eq.tau + 1.0;
  const double re_max = bound;
  const double im_max = search.im_max > 0.0 ? search.im_max : bound + 8.0 * std::numbers::pi / eq.tau;

  std::vector<Complex> roots;
  auto is_known = [&](Complex z) {
    return std::any_of(roots.begin(), roots.end(), [&](Complex r) {
      return std::abs(r - z) <= 1e-7 * (1.0 + std::abs(z));
    });
  };

  for (double re = search.re_min; re <= re_max + 1e-12; re += search.spacing) {
    for (double im = 0.0; im <= im_max + 1e-12; im += search.spacing) {
      Complex z(re, im);
      bool ok = false;
      for (int it = 0; it < search.max_iter; ++it) {
        const Complex h = eq.value(z);
        if (h == 0.0) {
          ok = true;
          break;
        }
        Complex denom = eq.derivative(z) / h;
        for (const Complex& r : roots) denom -= 1.0 / (z - r);
        const Complex step = 1.0 / denom;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(z) > 1e6) break;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      for (int it = 0; it < 5; ++it) {
        const Complex dh = eq.derivative(z);
        if (dh == 0.0) break;
        z -= eq.value(z) / dh;
      }
      if (!(std::abs(eq.value(z)) <= 1e-10 * (1.0 + std::abs(z)))) continue;
      if (std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z))) z = Complex(z.real(), 0.0);
      if (is_known(z)) continue;
      roots.push_back(z);
      if (z.imag() != 0.0) roots.push_back(std::conj(z));
    }
  }
  if (roots.empty()) throw ConvergenceError("characteristic root search found no roots");
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return roots;
}

Complex rightmost_root(const CharacteristicEquation& eq, const RootSearch& search) {
  const auto roots = characteristic_roots(eq, search);
  const double top = roots.front().real();
  for (const Complex& r : roots) {
    if (r.imag() >= 0.0 && std::abs(r.real() - top) <= 1e-9 * (1.0 + std::abs(top))) return r;
  }
  return roots.front();
}

}  // namespace ddesim::harness
