/**
 * @file parse.hpp
 * @brief Recursive-descent parser for scalar literals and affine-linear forms.
 *
 * Grammar (whitespace ignored):
 *
 *     expr    := term { ('+' | '-') term }
 *     term    := unary { ('*' | '/') unary }
 *     unary   := ('+' | '-') unary | power
 *     power   := primary [ '^' ['-'] integer ]
 *     primary := integer | 'z' | 'x' integer | '(' expr ')'
 *
 * `z` is the generator zeta_M of the ambient field and `x<k>` the k-th
 * coordinate (1-based). Products and quotients must stay affine-linear.
 */
#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stabhyp/cyclo.hpp"

namespace stabhyp {

/// Syntax or semantic error at a 1-based column of the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : std::runtime_error(message), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// sum_i linear[i] * x_(i+1) + constant
struct AffineForm {
  std::vector<Scalar> linear;
  Scalar constant;

  bool is_constant() const {
    for (const auto& c : linear) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
};

namespace detail {

class AffineParser {
 public:
  AffineParser(std::string_view text, const Field& field, std::size_t nvars)
      : text_(text), field_(field), nvars_(nvars) {}

  AffineForm parse() {
    AffineForm f = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const { throw ParseError(pos + 1, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AffineForm constant(const Scalar& s) const {
    AffineForm f;
    f.linear.assign(nvars_, Scalar(field_, 0));
    f.constant = s.in(field_);
    return f;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  AffineForm expr() {
    AffineForm acc = term();
    for (;;) {
      if (accept('+')) {
        add(acc, term(), 1);
      } else if (accept('-')) {
        add(acc, term(), -1);
      } else {
        return acc;
      }
    }
  }

  static void add(AffineForm& acc, const AffineForm& rhs, int sign) {
    for (std::size_t i = 0; i < acc.linear.size(); ++i) {
      if (sign > 0) acc.linear[i] += rhs.linear[i];
      else acc.linear[i] -= rhs.linear[i];
    }
    if (sign > 0) acc.constant += rhs.constant;
    else acc.constant -= rhs.constant;
  }

  static AffineForm scale(AffineForm f, const Scalar& s) {
    for (auto& c : f.linear) c *= s;
    f.constant *= s;
    return f;
  }

  AffineForm term() {
    AffineForm acc = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) {
        AffineForm rhs = unary();
        if (acc.is_constant()) {
          acc = scale(std::move(rhs), acc.constant);
        } else if (rhs.is_constant()) {
          acc = scale(std::move(acc), rhs.constant);
        } else {
          fail_at(at, "product of two non-constant terms is not linear");
        }
      } else if (accept('/')) {
        skip_ws();
        const std::size_t dpos = pos_;
        AffineForm rhs = unary();
        if (!rhs.is_constant()) fail_at(dpos, "division by a non-constant term");
        if (rhs.constant.is_zero()) fail_at(dpos, "division by zero");
        acc = scale(std::move(acc), rhs.constant.inverse());
      } else {
        return acc;
      }
    }
  }

  AffineForm unary() {
    if (accept('-')) return scale(unary(), Scalar(-1));
    if (accept('+')) return unary();
    return power();
  }

  AffineForm power() {
    skip_ws();
    const std::size_t base_pos = pos_;
    AffineForm base = primary();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    const std::string d = digits();
    long e = std::stol(d);
    if (negative) e = -e;
    if (!base.is_constant()) {
      if (e == 1) return base;
      fail_at(base_pos, "power of a non-constant term is not linear");
    }
    if (e < 0 && base.constant.is_zero()) fail_at(base_pos, "division by zero");
    return constant(base.constant.pow(e));
  }

  AffineForm primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      AffineForm inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return constant(Scalar(field_, mpq_class(mpz_class(digits()))));
    }
    if (c == 'z') {
      ++pos_;
      return constant(Scalar::zeta(field_));
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a coordinate index after 'x'");
      const std::string d = digits();
      const unsigned long k = std::stoul(d);
      if (k == 0 || k > nvars_)
        fail_at(at, "unknown variable x" + d + " (dimension is " + std::to_string(nvars_) + ")");
      AffineForm f = constant(Scalar(field_, 0));
      f.linear[k - 1] = Scalar(field_, 1);
      return f;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const Field& field_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline AffineForm parse_affine(std::string_view text, const Field& field, std::size_t nvars) {
  return detail::AffineParser(text, field, nvars).parse();
}

inline Scalar parse_scalar(std::string_view text, const Field& field) {
  return parse_affine(text, field, 0).constant;
}

/// Splits on commas that are not nested in parentheses. Returned offsets are
/// 0-based starting positions of each piece.
inline std::vector<std::pair<std::size_t, std::string_view>> split_top_level(std::string_view text, char sep) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == sep && depth == 0) {
      out.emplace_back(start, text.substr(start, i - start));
      start = i + 1;
    }
  }
  out.emplace_back(start, text.substr(start));
  return out;
}

/// Comma-separated scalar literals, e.g. `1,-1,(z + 1)`.
inline std::vector<Scalar> parse_scalar_list(std::string_view text, const Field& field) {
  std::vector<Scalar> out;
  for (auto [offset, piece] : split_top_level(text, ',')) {
    try {
      out.push_back(parse_scalar(piece, field));
    } catch (const ParseError& e) {
      throw ParseError(offset + e.column(), e.what());
    }
  }
  return out;
}

}  // namespace stabhyp
