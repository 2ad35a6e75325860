// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ddesim/types.hpp"

namespace ddesim {

/// Raised for malformed coefficient expressions. `position()` is the
/// zero-based character offset where the problem was detected.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A real-valued arithmetic expression in the variables `t` and `theta`.
///
/// Grammar (right-associative `^`, unary minus binds tighter than `^`):
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := unary ('^' factor)?
///     unary  := '-'? atom
///     atom   := number | 't' | 'theta' | 'pi' | func '(' expr ')' | '(' expr ')'
///     func   := sin | cos | exp | log | abs | sqrt
///
/// The parsed form is compiled to a postfix program. Evaluation does not
/// touch shared state, so one instance can be evaluated from many threads.
class CoefficientExpr {
 public:
  /// Parses `source`. Throws ParseError on syntax errors, unknown
  /// identifiers, or a `theta` reference when `allow_theta` is false.
  static CoefficientExpr parse(std::string_view source, bool allow_theta);

  double eval(double t, double theta = 0.0) const;

  const std::string& source() const noexcept { return source_; }
  bool uses_theta() const noexcept { return uses_theta_; }
  bool uses_t() const noexcept { return uses_t_; }
  /// True when the value depends on neither t nor theta.
  bool is_constant() const noexcept;

  enum class Op : unsigned char {
    push_const, push_t, push_theta,
    add, sub, mul, div, pow, neg,
    sin, cos, exp, log, abs, sqrt,
  };
  struct Instr {
    Op op;
    double value = 0.0;
  };

 private:
  CoefficientExpr() = default;

  std::string source_;
  std::vector<Instr> program_;
  std::size_t max_depth_ = 0;
  bool uses_theta_ = false;
  bool uses_t_ = false;
};

/// Convenience wrapper: `parse_coefficient(src, allow_theta)`.
CoefficientExpr parse_coefficient(std::string_view source, bool allow_theta);

}  // namespace ddesim
