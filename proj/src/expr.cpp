// SPDX-License-Identifier: Apache-2.0
#include "ddesim/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace ddesim {

ParseError::ParseError(const std::string& message, std::size_t position)
    : InvalidArgument(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

using Op = CoefficientExpr::Op;
using Instr = CoefficientExpr::Instr;

// Recursive-descent parser emitting postfix code directly.
class Parser {
 public:
  Parser(std::string_view src, bool allow_theta) : src_(src), allow_theta_(allow_theta) {}

  std::vector<Instr> run() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    expr();
    skip_ws();
    if (pos_ != src_.size()) {
      throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
    }
    return std::move(code_);
  }

  bool used_theta() const { return used_theta_; }
  bool used_t() const { return used_t_; }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) {
        throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        code_.push_back({Op::add});
      } else if (accept('-')) {
        term();
        code_.push_back({Op::sub});
      } else {
        return;
      }
    }
  }

  void term() {
    factor();
    for (;;) {
      if (accept('*')) {
        factor();
        code_.push_back({Op::mul});
      } else if (accept('/')) {
        factor();
        code_.push_back({Op::div});
      } else {
        return;
      }
    }
  }

  void factor() {
    unary();
    if (accept('^')) {
      factor();
      code_.push_back({Op::pow});
    }
  }

  void unary() {
    if (accept('-')) {
      atom();
      code_.push_back({Op::neg});
    } else {
      atom();
    }
  }

  void atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      identifier();
      return;
    }
    if (accept('(')) {
      expr();
      expect(')');
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
        pos_ = p;
      }
    }
    double value = 0.0;
    const auto* first = src_.data() + start;
    const auto* last = src_.data() + pos_;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ParseError("malformed number '" + std::string(first, last) + "'", start);
    }
    code_.push_back({Op::push_const, value});
  }

  void identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") {
      used_t_ = true;
      code_.push_back({Op::push_t});
      return;
    }
    if (name == "theta") {
      if (!allow_theta_) throw ParseError("'theta' is not allowed in this coefficient", start);
      used_theta_ = true;
      code_.push_back({Op::push_theta});
      return;
    }
    if (name == "pi") {
      code_.push_back({Op::push_const, std::numbers::pi});
      return;
    }
    static constexpr std::array<std::pair<std::string_view, Op>, 6> kFuncs{{
        {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp},
        {"log", Op::log}, {"abs", Op::abs}, {"sqrt", Op::sqrt},
    }};
    for (const auto& [fname, op] : kFuncs) {
      if (name == fname) {
        expect('(');
        expr();
        expect(')');
        code_.push_back({op});
        return;
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  bool allow_theta_;
  std::size_t pos_ = 0;
  std::vector<Instr> code_;
  bool used_theta_ = false;
  bool used_t_ = false;
};

std::size_t stack_depth(const std::vector<Instr>& code) {
  std::size_t depth = 0, max_depth = 0;
  for (const auto& ins : code) {
    switch (ins.op) {
      case Op::push_const:
      case Op::push_t:
      case Op::push_theta:
        ++depth;
        break;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
      case Op::pow:
        --depth;
        break;
      default:
        break;
    }
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

template <class Stack>
double run_program(const std::vector<Instr>& code, Stack& st, double t, double theta) {
  std::size_t sp = 0;
  for (const auto& ins : code) {
    switch (ins.op) {
      case Op::push_const: st[sp++] = ins.value; break;
      case Op::push_t: st[sp++] = t; break;
      case Op::push_theta: st[sp++] = theta; break;
      case Op::add: --sp; st[sp - 1] += st[sp]; break;
      case Op::sub: --sp; st[sp - 1] -= st[sp]; break;
      case Op::mul: --sp; st[sp - 1] *= st[sp]; break;
      case Op::div: --sp; st[sp - 1] /= st[sp]; break;
      case Op::pow: --sp; st[sp - 1] = std::pow(st[sp - 1], st[sp]); break;
      case Op::neg: st[sp - 1] = -st[sp - 1]; break;
      case Op::sin: st[sp - 1] = std::sin(st[sp - 1]); break;
      case Op::cos: st[sp - 1] = std::cos(st[sp - 1]); break;
      case Op::exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case Op::log: st[sp - 1] = std::log(st[sp - 1]); break;
      case Op::abs: st[sp - 1] = std::abs(st[sp - 1]); break;
      case Op::sqrt: st[sp - 1] = std::sqrt(st[sp - 1]); break;
    }
  }
  return st[0];
}

}  // namespace

CoefficientExpr CoefficientExpr::parse(std::string_view source, bool allow_theta) {
  Parser parser(source, allow_theta);
  CoefficientExpr out;
  out.program_ = parser.run();
  out.source_ = std::string(source);
  out.max_depth_ = stack_depth(out.program_);
  out.uses_theta_ = parser.used_theta();
  out.uses_t_ = parser.used_t();
  return out;
}

double CoefficientExpr::eval(double t, double theta) const {
  constexpr std::size_t kInline = 32;
  if (max_depth_ <= kInline) {
    std::array<double, kInline> st;
    return run_program(program_, st, t, theta);
  }
  std::vector<double> st(max_depth_);
  return run_program(program_, st, t, theta);
}

bool CoefficientExpr::is_constant() const noexcept {
  return !uses_t_ && !uses_theta_;
}

CoefficientExpr parse_coefficient(std::string_view source, bool allow_theta) {
  return CoefficientExpr::parse(source, allow_theta);
}

}  // namespace ddesim
