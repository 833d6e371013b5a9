#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svmap/errors.hpp"
#include "svmap/format.hpp"
#include "svmap/parse.hpp"
#include "svmap/piecewise_map.hpp"

namespace svmap {

// Map file: one statement per line, '#' starts a comment, blank lines are
// ignored, statement order is free.
//   domain [a, b]
//   puncture x
//   piece (u, v) : <expr>
//   fiber x : <set-literal> | auto
// Numbers are constant expressions; pieces must tile [a, b] exactly after
// constant folding.  "fiber x : auto" is the same as omitting the line.
inline PiecewiseMap parse_map(std::string_view text) {
  struct PieceStmt { double u, v; Expr e; int line; };
  struct FiberStmt { double x; std::optional<CompactSet> set; int line; };
  struct PunctStmt { double x; int line; };
  std::optional<std::pair<double, double>> domain;
  std::vector<PieceStmt> pieces;
  std::vector<FiberStmt> fibers;
  std::vector<PunctStmt> punctures;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    Cursor cur{raw, 0, line_no};
    cur.skip_ws();
    if (cur.eof()) continue;
    if (cur.try_keyword("domain")) {
      if (domain) cur.fail("duplicate domain statement");
      cur.expect('[');
      double a = parse_const(cur);
      cur.expect(',');
      double b = parse_const(cur);
      cur.expect(']');
      if (!(a < b)) cur.fail("domain requires a < b");
      domain = {a, b};
    } else if (cur.try_keyword("puncture")) {
      punctures.push_back({parse_const(cur), line_no});
    } else if (cur.try_keyword("piece")) {
      cur.expect('(');
      double u = parse_const(cur);
      cur.expect(',');
      double v = parse_const(cur);
      cur.expect(')');
      if (!(u < v)) cur.fail("piece requires u < v");
      cur.expect(':');
      pieces.push_back({u, v, parse_expr(cur), line_no});
    } else if (cur.try_keyword("fiber")) {
      double x = parse_const(cur);
      cur.expect(':');
      cur.skip_ws();
      if (cur.try_keyword("auto"))
        fibers.push_back({x, std::nullopt, line_no});
      else
        fibers.push_back({x, parse_set_literal(cur), line_no});
    } else {
      cur.fail("expected 'domain', 'puncture', 'piece', or 'fiber'");
    }
    cur.skip_ws();
    if (!cur.eof()) cur.fail("trailing input after statement");
  }

  auto fail_at = [](int line, const std::string& msg) {
    throw ParseError(msg, line, 1);
  };
  if (!domain) fail_at(1, "missing domain statement");
  if (pieces.empty()) fail_at(line_no, "missing piece statements");
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const PieceStmt& l, const PieceStmt& r) {
                     return l.u != r.u ? l.u < r.u : l.v < r.v;
                   });
  if (pieces.front().u != domain->first)
    fail_at(pieces.front().line, "pieces do not start at the left domain endpoint");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i].v != pieces[i + 1].u)
      fail_at(pieces[i + 1].line, "pieces do not tile the domain");
  if (pieces.back().v != domain->second)
    fail_at(pieces.back().line, "pieces do not end at the right domain endpoint");

  PiecewiseMap m;
  m.a = domain->first;
  m.b = domain->second;
  m.breaks.reserve(pieces.size() + 1);
  m.breaks.push_back(m.a);
  for (const PieceStmt& p : pieces) {
    m.breaks.push_back(p.v);
    m.pieces.push_back(p.e);
    if (const auto* s = std::get_if<SinRecip>(&p.e))
      if (p.u < s->c && s->c < p.v)
        fail_at(p.line, "sinrecip center inside the piece");
  }
  m.fibers.assign(m.breaks.size(), std::nullopt);

  std::sort(punctures.begin(), punctures.end(),
            [](const PunctStmt& l, const PunctStmt& r) { return l.x < r.x; });
  for (std::size_t i = 0; i < punctures.size(); ++i) {
    const PunctStmt& p = punctures[i];
    std::size_t bi = m.break_index(p.x);
    if (bi == PiecewiseMap::npos || bi == 0 || bi + 1 == m.breaks.size())
      fail_at(p.line, "puncture " + fmt_num(p.x) + " is not an interior breakpoint");
    if (i > 0 && punctures[i - 1].x == p.x)
      fail_at(p.line, "duplicate puncture " + fmt_num(p.x));
    m.punctures.push_back(p.x);
  }

  for (const FiberStmt& f : fibers) {
    std::size_t bi = m.break_index(f.x);
    if (bi == PiecewiseMap::npos)
      fail_at(f.line, "fiber " + fmt_num(f.x) + " is not at a breakpoint");
    if (m.is_puncture(f.x))
      fail_at(f.line, "fiber " + fmt_num(f.x) + " is at a punctured point");
    for (const FiberStmt& g : fibers)
      if (&g != &f && g.x == f.x && g.line < f.line)
        fail_at(f.line, "duplicate fiber " + fmt_num(f.x));
    m.fibers[bi] = f.set;
  }

  m.validate();
  return m;
}

// Deterministic inverse of parse_map: statements in canonical order,
// numbers in shortest round-trip form, auto fibers left implicit.
inline std::string serialize_map(const PiecewiseMap& m) {
  std::string out;
  out += "domain [" + fmt_num(m.a) + ", " + fmt_num(m.b) + "]\n";
  for (double p : m.punctures) out += "puncture " + fmt_num(p) + "\n";
  for (std::size_t i = 0; i < m.pieces.size(); ++i)
    out += "piece (" + fmt_num(m.breaks[i]) + ", " + fmt_num(m.breaks[i + 1]) +
           ") : " + format_expr(m.pieces[i]) + "\n";
  for (std::size_t i = 0; i < m.breaks.size(); ++i)
    if (m.fibers[i])
      out += "fiber " + fmt_num(m.breaks[i]) + " : " + format_set(*m.fibers[i]) + "\n";
  return out;
}

}  // namespace svmap
