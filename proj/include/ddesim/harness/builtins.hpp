// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddesim/extended.hpp"
#include "ddesim/harness/config.hpp"
#include "ddesim/model.hpp"

namespace ddesim::harness {

/// Builtin scalar problems (dim 1), parameters with their defaults:
///
///   hayes              x' = a x + b x(t - tau)                         a = 0, b = -1
///   pure-ode           x' = a x                                        a = 0
///   distributed-const  x' = a x + b x(t - tau) + c0 int x(t + theta)   a = 0, b = 0, c0 = -1
///   periodic-scalar    x' = (a0 + a1 sin(2 pi t / period)) x + b x(t - tau)
///                                                                       a0 = 0, a1 = 1, period = 1, b = 0
std::vector<std::string> builtin_names();

/// Throws InvalidArgument for an unknown name.
std::map<std::string, double> builtin_defaults(const std::string& name);

/// Builds the problem described by `cfg` (builtin or expressions), on [s, r].
DdeProblem make_problem(const RunConfig& cfg);

/// Expected dominant multiplier and where it came from.
struct Target {
  Complex multiplier;
  std::string provenance;
};

/// Registered target for the dominant multiplier over the configured window:
/// analytic for pure-ode and periodic-scalar with b = 0, a Newton root of the
/// characteristic equation for hayes and distributed-const, or the
/// user-supplied [converge] target. Empty when none applies.
std::optional<Target> dominant_target(const RunConfig& cfg);

struct QuadTarget {
  QuadComplex multiplier;
  std::string provenance;
};

/// As dominant_target, evaluated in Quad; characteristic roots are polished
/// by Newton in Quad. A user-supplied target is only double accurate.
std::optional<QuadTarget> dominant_target_quad(const RunConfig& cfg);

/// Sets a named builtin parameter (or "tau"). Throws for unknown names.
void set_parameter(RunConfig& cfg, const std::string& name, double value);

}  // namespace ddesim::harness
