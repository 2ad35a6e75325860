// SPDX-License-Identifier: Apache-2.0
#include "ddesim/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ddesim/harness/builtins.hpp"

namespace ddesim::harness {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InvalidArgument("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const KeyValueFile::Entry& e) {
  double v = 0.0;
  const std::string& s = e.value;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || s.empty()) {
    fail(e.line, "'" + e.key + "' expects a number, got '" + s + "'");
  }
  return v;
}

int to_int(const KeyValueFile::Entry& e) {
  const double v = to_double(e);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(e.line, "'" + e.key + "' expects an integer");
  return static_cast<int>(v);
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s.front() == '#' || s.front() == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (section.empty()) fail(line, "empty section name");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    Entry e;
    e.section = section;
    e.key = trim(std::string_view(s).substr(0, eq));
    e.line = line;
    if (e.key.empty()) fail(line, "missing key");
    std::string value = trim(std::string_view(s).substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      const auto close = value.find('"', 1);
      if (close == std::string::npos) fail(line, "unterminated string");
      const std::string rest = trim(std::string_view(value).substr(close + 1));
      if (!rest.empty() && rest.front() != '#') fail(line, "trailing text after string");
      e.value = value.substr(1, close - 1);
      e.quoted = true;
    } else {
      const auto hash = value.find('#');
      e.value = trim(std::string_view(value).substr(0, hash));
    }
    out.entries_.push_back(std::move(e));
  }
  return out;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  auto number = [&](std::string_view part) {
    const std::string t = trim(part);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      throw InvalidArgument("malformed number '" + t + "' in list '" + text + "'");
    }
    return v;
  };
  if (text.find(':') != std::string::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InvalidArgument("range must be lo:hi:count");
    const double lo = number(std::string_view(text).substr(0, c1));
    const double hi = number(std::string_view(text).substr(c1 + 1, c2 - c1 - 1));
    const double count = number(std::string_view(text).substr(c2 + 1));
    if (count < 1 || count != std::floor(count)) throw InvalidArgument("range count must be a positive integer");
    const int n = static_cast<int>(count);
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(number(std::string_view(text).substr(start, comma == std::string::npos ? comma : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

QuadratureRule RunConfig::rule() const {
  if (quad_points > 0) return make_rule(quad_kind, quad_points);
  const int degree = std::max(n, effective_m());
  if (quad_kind == QuadratureKind::gauss_legendre) return default_rule(degree);
  return clenshaw_curtis(std::max(degree + 3, 16));
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json p;
  if (!problem.builtin.empty()) {
    p["builtin"] = problem.builtin;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : problem.params) params[k] = v;
    p["params"] = params;
  } else {
    p["dim"] = problem.dim;
    p["a"] = problem.a_expr;
    p["b"] = problem.b_expr;
    p["c"] = problem.c_expr;
  }
  p["tau"] = problem.tau;
  j["problem"] = p;
  j["window"] = {{"s", s}, {"r", r}};
  const QuadratureRule q = rule();
  j["discretization"] = {{"N", n}, {"M", effective_m()},
                         {"quad_rule", to_string(q.kind)}, {"quad_points", q.points}};
  j["tolerances"] = {{"zero_rel_tol", zero_rel_tol}, {"cluster_tol", cluster_tol}, {"margin", margin}};
  return j;
}

RunConfig resolve_config(const KeyValueFile& file) {
  RunConfig cfg;
  std::optional<double> rs;
  bool has_r = false;
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, double> params;
  std::map<std::string, int> param_lines;

  for (const auto& e : file.entries()) {
    if (!seen.insert({e.section, e.key}).second) fail(e.line, "duplicate key '" + e.key + "'");
    const std::string& sec = e.section;
    const std::string& key = e.key;
    if (sec == "problem") {
      if (key == "builtin") {
        cfg.problem.builtin = e.value;
      } else if (key == "tau") {
        cfg.problem.tau = to_double(e);
      } else if (key == "dim") {
        cfg.problem.dim = to_int(e);
      } else if (e.quoted) {
        if (key == "a") cfg.problem.a_expr = e.value;
        else if (key == "b") cfg.problem.b_expr = e.value;
        else if (key == "c") cfg.problem.c_expr = e.value;
        else fail(e.line, "unknown coefficient '" + key + "'");
      } else {
        params[key] = to_double(e);
        param_lines[key] = e.line;
      }
    } else if (sec == "window") {
      if (key == "s") cfg.s = to_double(e);
      else if (key == "r") { cfg.r = to_double(e); has_r = true; }
      else if (key == "rs") rs = to_double(e);
      else fail(e.line, "unknown key '" + key + "' in [window]");
    } else if (sec == "discretization") {
      if (key == "N") cfg.n = to_int(e);
      else if (key == "M") cfg.m = to_int(e);
      else if (key == "quad_points") cfg.quad_points = to_int(e);
      else if (key == "quad_rule") cfg.quad_kind = quadrature_kind_from_string(e.value);
      else fail(e.line, "unknown key '" + key + "' in [discretization]");
    } else if (sec == "tolerances") {
      if (key == "zero_rel_tol") cfg.zero_rel_tol = to_double(e);
      else if (key == "cluster_tol") cfg.cluster_tol = to_double(e);
      else if (key == "margin") cfg.margin = to_double(e);
      else fail(e.line, "unknown key '" + key + "' in [tolerances]");
    } else if (sec == "converge") {
      if (key == "N_list") {
        cfg.n_list.clear();
        for (double v : parse_value_list(e.value)) {
          if (v < 1 || v != std::floor(v)) fail(e.line, "N_list entries must be positive integers");
          cfg.n_list.push_back(static_cast<int>(v));
        }
      } else if (key == "target_re") {
        cfg.target = {to_double(e), cfg.target ? cfg.target->second : 0.0};
      } else if (key == "target_im") {
        cfg.target = {cfg.target ? cfg.target->first : 0.0, to_double(e)};
      } else if (key == "precision") {
        if (e.value == "quad") cfg.quad_precision = true;
        else if (e.value == "double") cfg.quad_precision = false;
        else fail(e.line, "precision must be 'double' or 'quad'");
      } else {
        fail(e.line, "unknown key '" + key + "' in [converge]");
      }
    } else if (sec == "chart") {
      if (key == "p1") cfg.p1 = e.value;
      else if (key == "p2") cfg.p2 = e.value;
      else if (key == "p1_values") cfg.p1_values = parse_value_list(e.value);
      else if (key == "p2_values") cfg.p2_values = parse_value_list(e.value);
      else fail(e.line, "unknown key '" + key + "' in [chart]");
    } else if (sec == "floquet") {
      if (key == "omega") cfg.omega = to_double(e);
      else if (key == "k") cfg.k = to_int(e);
      else fail(e.line, "unknown key '" + key + "' in [floquet]");
    } else if (sec == "initial") {
      if (key == "phi") cfg.phi_expr = e.value;
      else if (key == "samples") cfg.samples = to_int(e);
      else if (key == "reference_h") cfg.reference_h = to_double(e);
      else fail(e.line, "unknown key '" + key + "' in [initial]");
    } else {
      fail(e.line, "unknown section '[" + sec + "]'");
    }
  }

  if (rs) {
    if (has_r) throw InvalidArgument("config: give either r or rs in [window], not both");
    cfg.r = cfg.s + *rs;
  }
  if (cfg.problem.builtin.empty()) {
    if (!params.empty()) {
      const auto& first = *params.begin();
      fail(param_lines[first.first],
           "numeric parameter '" + first.first + "' requires a builtin problem; quote expressions");
    }
  } else {
    if (!cfg.problem.a_expr.empty() || !cfg.problem.b_expr.empty() || !cfg.problem.c_expr.empty()) {
      throw InvalidArgument("config: builtin problems take numeric parameters, not expressions");
    }
    cfg.problem.params = builtin_defaults(cfg.problem.builtin);
    for (const auto& [k, v] : params) {
      if (!cfg.problem.params.contains(k)) {
        fail(param_lines[k], "builtin '" + cfg.problem.builtin + "' has no parameter '" + k + "'");
      }
      cfg.problem.params[k] = v;
    }
  }
  if (cfg.n < 1) throw InvalidArgument("config: N must be at least 1");
  if (cfg.m < 0) throw InvalidArgument("config: M must be at least 1");
  if (cfg.samples < 2) throw InvalidArgument("config: samples must be at least 2");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return resolve_config(KeyValueFile::load(path));
}

RunConfig parse_config(const std::string& text) { return resolve_config(KeyValueFile::parse(text)); }

}  // namespace ddesim::harness
