#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <string_view>

#include "svmap/compact_set.hpp"
#include "svmap/errors.hpp"
#include "svmap/expr.hpp"

namespace svmap {

// Single-line text cursor.  line is carried so map-file errors can report the
// position of the offending token; standalone parses use line 1.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }
  int col() const { return static_cast<int>(pos) + 1; }

  void skip_ws() {
    while (!eof() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col());
  }

  bool try_consume(char c) {
    skip_ws();
    if (peek() == c) { ++pos; return true; }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  // Word = run of letters, digits, '_', '-', '(', ')' not starting a number.
  std::string_view peek_word() {
    skip_ws();
    std::size_t p = pos;
    while (p < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_' ||
            text[p] == '-' || text[p] == '(' || text[p] == ')'))
      ++p;
    return text.substr(pos, p - pos);
  }

  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (text.substr(pos, kw.size()) != kw) return false;
    std::size_t after = pos + kw.size();
    if (after < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
      return false;
    pos = after;
    return true;
  }
};

namespace detail {

double parse_const(Cursor& cur);

// primary := number | "pi" | "(" const ")"
inline double parse_const_primary(Cursor& cur) {
  cur.skip_ws();
  if (cur.try_consume('(')) {
    double v = parse_const(cur);
    cur.expect(')');
    return v;
  }
  if (cur.try_keyword("pi")) return std::numbers::pi;
  // Bounded scan of an unsigned decimal (optional exponent); the view is not
  // NUL-terminated, so measure the token before handing it to strtod.
  std::size_t p = cur.pos;
  auto digit = [&](std::size_t i) {
    return i < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[i]));
  };
  std::size_t q = p;
  while (digit(q)) ++q;
  if (q < cur.text.size() && cur.text[q] == '.') {
    ++q;
    while (digit(q)) ++q;
  }
  bool has_mantissa = q > p && cur.text.substr(p, q - p) != ".";
  if (!has_mantissa) cur.fail("expected a number");
  if (q < cur.text.size() && (cur.text[q] == 'e' || cur.text[q] == 'E')) {
    std::size_t x = q + 1;
    if (x < cur.text.size() && (cur.text[x] == '+' || cur.text[x] == '-')) ++x;
    if (digit(x)) {
      while (digit(x)) ++x;
      q = x;
    }
  }
  std::string token(cur.text.substr(p, q - p));
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) cur.fail("expected a number");
  if (!std::isfinite(v)) cur.fail("number out of range");
  cur.pos = q;
  return v;
}

inline double parse_const_factor(Cursor& cur) {
  cur.skip_ws();
  if (cur.try_consume('-')) return -parse_const_factor(cur);
  if (cur.try_consume('+')) return parse_const_factor(cur);
  return parse_const_primary(cur);
}

inline double parse_const_term(Cursor& cur) {
  double v = parse_const_factor(cur);
  for (;;) {
    cur.skip_ws();
    if (cur.try_consume('*')) {
      v *= parse_const_factor(cur);
    } else if (cur.peek() == '/') {
      int at = cur.col();
      ++cur.pos;
      double d = parse_const_factor(cur);
      if (d == 0.0) throw ParseError("division by zero in constant", cur.line, at);
      v /= d;
    } else {
      return v;
    }
  }
}

inline double parse_const(Cursor& cur) {
  double v = parse_const_term(cur);
  for (;;) {
    cur.skip_ws();
    if (cur.try_consume('+')) v += parse_const_term(cur);
    else if (cur.try_consume('-')) v -= parse_const_term(cur);
    else return v;
  }
}

// A constant in a whitespace-separated list: an optionally signed number,
// "pi", or a parenthesized full expression.  Binary operators must be
// parenthesized here, otherwise "1 -4" would collapse to one constant.
inline double parse_const_atom(Cursor& cur) {
  cur.skip_ws();
  if (cur.try_consume('-')) return -parse_const_atom(cur);
  if (cur.try_consume('+')) return parse_const_atom(cur);
  return parse_const_primary(cur);
}

inline bool at_const_start(Cursor& cur) {
  cur.skip_ws();
  char c = cur.peek();
  return c == '-' || c == '+' || c == '(' || c == '.' ||
         std::isdigit(static_cast<unsigned char>(c)) ||
         cur.text.substr(cur.pos, 2) == "pi";
}

}  // namespace detail

// Arithmetic constant: decimals, "pi", + - * /, parentheses.  Folded at
// parse time; division by zero is rejected here.
inline double parse_const(Cursor& cur) { return detail::parse_const(cur); }

inline double parse_const(std::string_view text) {
  Cursor cur{text};
  double v = detail::parse_const(cur);
  cur.skip_ws();
  if (!cur.eof()) cur.fail("trailing input after constant");
  return v;
}

// expr := "poly" const+ | "sinrecip" "amp=" const "k=" const "c=" const "off=" const
inline Expr parse_expr(Cursor& cur) {
  cur.skip_ws();
  if (cur.try_keyword("poly")) {
    std::vector<double> coeffs;
    while (detail::at_const_start(cur)) coeffs.push_back(detail::parse_const_atom(cur));
    if (coeffs.empty()) cur.fail("poly needs at least one coefficient");
    return Poly{std::move(coeffs)};
  }
  if (cur.try_keyword("sinrecip")) {
    double vals[4];
    const char* keys[4] = {"amp", "k", "c", "off"};
    for (int i = 0; i < 4; ++i) {
      cur.skip_ws();
      if (!cur.try_keyword(keys[i]))
        cur.fail(std::string("expected '") + keys[i] + "='");
      cur.expect('=');
      vals[i] = detail::parse_const(cur);
    }
    if (vals[1] == 0.0) cur.fail("sinrecip requires k != 0");
    return SinRecip{vals[0], vals[1], vals[2], vals[3]};
  }
  cur.fail("expected 'poly' or 'sinrecip'");
}

inline Expr parse_expr(std::string_view text) {
  Cursor cur{text};
  Expr e = parse_expr(cur);
  cur.skip_ws();
  if (!cur.eof()) cur.fail("trailing input after expression");
  return e;
}

// Set literal: terms joined by "u"; a term is "{a, b, ...}" (points) or
// "[a, b]" (interval).  Example: "[-1,1] u {2}".
inline CompactSet parse_set_literal(Cursor& cur) {
  std::vector<Interval> parts;
  for (;;) {
    cur.skip_ws();
    if (cur.try_consume('{')) {
      do {
        double v = detail::parse_const(cur);
        parts.push_back({v, v});
      } while (cur.try_consume(','));
      cur.expect('}');
    } else if (cur.try_consume('[')) {
      double lo = detail::parse_const(cur);
      cur.expect(',');
      double hi = detail::parse_const(cur);
      cur.expect(']');
      if (lo > hi) cur.fail("interval with lo > hi");
      parts.push_back({lo, hi});
    } else {
      cur.fail("expected '{' or '['");
    }
    cur.skip_ws();
    if (!cur.try_keyword("u")) break;
  }
  return CompactSet(std::move(parts));
}

inline CompactSet parse_set_literal(std::string_view text) {
  Cursor cur{text};
  CompactSet s = parse_set_literal(cur);
  cur.skip_ws();
  if (!cur.eof()) cur.fail("trailing input after set literal");
  return s;
}

}  // namespace svmap
