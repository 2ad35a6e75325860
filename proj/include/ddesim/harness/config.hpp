// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ddesim/quad.hpp"
#include "ddesim/types.hpp"

namespace ddesim::harness {

/// Flat `key = value` text with `[section]` headers. Lines starting with
/// '#' or ';' are comments; a '#' outside quotes ends the value.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::filesystem::path& path);

  /// Entries in file order as (section, key, value); quotes already stripped.
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
    bool quoted = false;
    int line = 0;
  };
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

struct ProblemSpec {
  std::string builtin;                   ///< empty for expression problems
  std::map<std::string, double> params;  ///< builtin parameters, defaults filled in
  int dim = 1;
  double tau = 1.0;
  std::string a_expr;  ///< expression problems only; empty means zero
  std::string b_expr;
  std::string c_expr;
};

struct RunConfig {
  ProblemSpec problem;
  double s = 0.0;
  double r = 1.0;
  int n = 20;
  int m = 0;            ///< 0 selects M = N
  int quad_points = 0;  ///< 0 selects the default rule
  QuadratureKind quad_kind = QuadratureKind::gauss_legendre;
  double zero_rel_tol = 1e-10;
  double cluster_tol = 1e-6;
  double margin = 1e-9;

  // converge
  std::vector<int> n_list{5, 10, 15, 20};
  std::optional<std::pair<double, double>> target;  ///< user-supplied (re, im)
  bool quad_precision = false;  ///< `precision = quad`: discretize in Quad

  // chart
  std::string p1;
  std::string p2;
  std::vector<double> p1_values;
  std::vector<double> p2_values;

  // floquet
  double omega = 0.0;
  int k = 0;  ///< 0 selects the smallest k with k*omega >= tau

  // solve
  std::string phi_expr = "1";
  int samples = 101;
  double reference_h = 0.0;  ///< 0 disables the reference comparison

  int effective_m() const noexcept { return m > 0 ? m : n; }
  double rs() const noexcept { return r - s; }
  QuadratureRule rule() const;
  nlohmann::ordered_json to_json() const;
};

/// Resolves a parsed file into a RunConfig, applying defaults. Unknown
/// sections or keys are rejected.
RunConfig resolve_config(const KeyValueFile& file);
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

/// "lo:hi:count" (inclusive, equispaced) or a comma-separated list.
std::vector<double> parse_value_list(const std::string& text);

}  // namespace ddesim::harness
