#pragma once

#include <charconv>
#include <string>
#include <variant>

#include "svmap/compact_set.hpp"
#include "svmap/expr.hpp"

namespace svmap {

// Shortest decimal that parses back to exactly the same double; keeps every
// serialize -> parse round trip lossless and byte-deterministic.
inline std::string fmt_num(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

inline std::string format_expr(const Expr& e) {
  if (const auto* p = std::get_if<Poly>(&e)) {
    std::string s = "poly";
    for (double c : p->coeffs) s += " " + fmt_num(c);
    return s;
  }
  const auto& s = std::get<SinRecip>(e);
  return "sinrecip amp=" + fmt_num(s.amp) + " k=" + fmt_num(s.k) +
         " c=" + fmt_num(s.c) + " off=" + fmt_num(s.off);
}

// Set literal; runs of point parts collapse into one brace list, so
// {-1} u {1} prints as "{-1, 1}".
inline std::string format_set(const CompactSet& a) {
  std::string out;
  const auto& parts = a.parts();
  for (std::size_t i = 0; i < parts.size();) {
    if (!out.empty()) out += " u ";
    if (parts[i].lo == parts[i].hi) {
      out += "{" + fmt_num(parts[i].lo);
      ++i;
      while (i < parts.size() && parts[i].lo == parts[i].hi) {
        out += ", " + fmt_num(parts[i].lo);
        ++i;
      }
      out += "}";
    } else {
      out += "[" + fmt_num(parts[i].lo) + ", " + fmt_num(parts[i].hi) + "]";
      ++i;
    }
  }
  return out;
}

}  // namespace svmap
