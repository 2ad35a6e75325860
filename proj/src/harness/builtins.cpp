// SPDX-License-Identifier: Apache-2.0
#include "ddesim/harness/builtins.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ddesim/harness/oracle.hpp"
#include "ddesim/kernels.hpp"

namespace ddesim::harness {

std::vector<std::string> builtin_names() {
  return {"distributed-const", "hayes", "periodic-scalar", "pure-ode"};
}

std::map<std::string, double> builtin_defaults(const std::string& name) {
  if (name == "hayes") return {{"a", 0.0}, {"b", -1.0}};
  if (name == "pure-ode") return {{"a", 0.0}};
  if (name == "distributed-const") return {{"a", 0.0}, {"b", 0.0}, {"c0", -1.0}};
  if (name == "periodic-scalar") return {{"a0", 0.0}, {"a1", 1.0}, {"period", 1.0}, {"b", 0.0}};
  throw InvalidArgument("unknown builtin problem '" + name + "'");
}

namespace {

PointCoefficient optional_constant(double v) {
  return v == 0.0 ? PointCoefficient{} : constant_coefficient(v);
}

DdeProblem builtin_problem(const RunConfig& cfg) {
  const auto& p = cfg.problem.params;
  const std::string& name = cfg.problem.builtin;
  DdeProblem out;
  out.dim = 1;
  out.tau = cfg.problem.tau;
  out.s = cfg.s;
  out.r = cfg.r;
  if (name == "hayes") {
    out.a = optional_constant(p.at("a"));
    out.b = optional_constant(p.at("b"));
  } else if (name == "pure-ode") {
    out.a = optional_constant(p.at("a"));
  } else if (name == "distributed-const") {
    out.a = optional_constant(p.at("a"));
    out.b = optional_constant(p.at("b"));
    if (p.at("c0") != 0.0) out.c = constant_kernel(p.at("c0"));
  } else if (name == "periodic-scalar") {
    const double a0 = p.at("a0"), a1 = p.at("a1"), period = p.at("period");
    if (!(period > 0.0)) throw InvalidArgument("periodic-scalar needs period > 0");
    out.a = [a0, a1, period](double t) {
      return CMatrix::Constant(1, 1, Complex(a0 + a1 * std::sin(2.0 * std::numbers::pi * t / period), 0.0));
    };
    out.b = optional_constant(p.at("b"));
  } else {
    throw InvalidArgument("unknown builtin problem '" + name + "'");
  }
  return out;
}

DdeProblem expression_problem(const RunConfig& cfg) {
  const auto& spec = cfg.problem;
  DdeProblem out;
  out.dim = spec.dim;
  out.tau = spec.tau;
  out.s = cfg.s;
  out.r = cfg.r;
  if (!spec.a_expr.empty()) {
    out.a = expression_coefficient(parse_coefficient_grid(spec.a_expr, spec.dim, false), spec.dim);
  }
  if (!spec.b_expr.empty()) {
    out.b = expression_coefficient(parse_coefficient_grid(spec.b_expr, spec.dim, false), spec.dim);
  }
  if (!spec.c_expr.empty()) {
    out.c = expression_kernel(parse_coefficient_grid(spec.c_expr, spec.dim, true), spec.dim);
  }
  return out;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

DdeProblem make_problem(const RunConfig& cfg) {
  DdeProblem p = cfg.problem.builtin.empty() ? expression_problem(cfg) : builtin_problem(cfg);
  p.validate();
  return p;
}

namespace {

template <class Real>
std::optional<std::pair<std::complex<Real>, std::string>> target_in(const RunConfig& cfg) {
  using std::cos;
  using std::exp;
  using C = std::complex<Real>;
  if (cfg.target) {
    return std::pair{C(Real(cfg.target->first), Real(cfg.target->second)),
                     std::string("user-supplied target")};
  }
  const auto& name = cfg.problem.builtin;
  if (name.empty()) return std::nullopt;
  const auto& p = cfg.problem.params;
  const Real s(cfg.s), r(cfg.r);
  const Real rs = r - s;
  if (name == "pure-ode") {
    return std::pair{C(exp(Real(p.at("a")) * rs)), std::string("analytic: exp(a*(r-s))")};
  }
  if (name == "periodic-scalar") {
    if (p.at("b") != 0.0) return std::nullopt;
    // exp of int_s^r (a0 + a1 sin(2 pi t / period)) dt
    const Real w = 2 * kernels::pi<Real>() / Real(p.at("period"));
    const Real integral = Real(p.at("a0")) * rs + Real(p.at("a1")) / w * (cos(w * s) - cos(w * r));
    return std::pair{C(exp(integral)), std::string("analytic: exp of the integral of a over [s,r]")};
  }
  CharacteristicEquation eq;
  eq.tau = cfg.problem.tau;
  eq.a = p.at("a");
  eq.b = p.at("b");
  if (name == "distributed-const") eq.c0 = p.at("c0");
  const Complex rough = rightmost_root(eq);
  const C lambda = polish_root<Real>(eq, C(Real(rough.real()), Real(rough.imag())));
  const Complex shown(static_cast<double>(lambda.real()), static_cast<double>(lambda.imag()));
  return std::pair{exp(lambda * rs),
                   "oracle: Newton on the characteristic equation, lambda = " + format_complex(shown)};
}

}  // namespace

std::optional<Target> dominant_target(const RunConfig& cfg) {
  auto t = target_in<double>(cfg);
  if (!t) return std::nullopt;
  return Target{t->first, std::move(t->second)};
}

std::optional<QuadTarget> dominant_target_quad(const RunConfig& cfg) {
  auto t = target_in<Quad>(cfg);
  if (!t) return std::nullopt;
  return QuadTarget{t->first, std::move(t->second)};
}

void set_parameter(RunConfig& cfg, const std::string& name, double value) {
  if (name == "tau") {
    cfg.problem.tau = value;
    return;
  }
  auto& params = cfg.problem.params;
  const auto it = params.find(name);
  if (cfg.problem.builtin.empty() || it == params.end()) {
    throw InvalidArgument("unknown chart parameter '" + name + "'");
  }
  it->second = value;
}

}  // namespace ddesim::harness
