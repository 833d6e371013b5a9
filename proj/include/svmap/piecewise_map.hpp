#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "svmap/compact_set.hpp"
#include "svmap/enclosure.hpp"
#include "svmap/errors.hpp"
#include "svmap/expr.hpp"
#include "svmap/format.hpp"

namespace svmap {

// A set-valued map on [a, b] minus finitely many punctured interior points.
// Between consecutive breakpoints the map is the graph of one expression; at
// a breakpoint the value is a declared compact fiber, or (auto) the union of
// the one-sided limit sets there.  A punctured breakpoint is outside the
// domain and carries no fiber.  Every value set lives inside a fixed bounded
// band, so subcontinuity is structural and never checked at runtime.
struct PiecewiseMap {
  double a = -1.0;
  double b = 1.0;
  std::vector<double> breaks;     // sorted, breaks.front() == a, breaks.back() == b
  std::vector<double> punctures;  // sorted subset of the interior breakpoints
  std::vector<Expr> pieces;       // pieces[i] lives on (breaks[i], breaks[i+1])
  // Aligned with breaks; nullopt means auto (union of one-sided limit sets).
  // Entries at punctured breakpoints must stay nullopt and are never read.
  std::vector<std::optional<CompactSet>> fibers;

  bool is_puncture(double x) const {
    return std::binary_search(punctures.begin(), punctures.end(), x);
  }

  // Exact index of x in breaks, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t break_index(double x) const {
    auto it = std::lower_bound(breaks.begin(), breaks.end(), x);
    if (it != breaks.end() && *it == x)
      return static_cast<std::size_t>(it - breaks.begin());
    return npos;
  }

  // Piece covering x; x must lie strictly between two breakpoints.
  std::size_t piece_index(double x) const {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return static_cast<std::size_t>(it - breaks.begin()) - 1;
  }

  void validate() const {
    auto fail = [](const std::string& m) { throw InvariantError("map: " + m); };
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
      fail("domain must be a nondegenerate bounded interval");
    if (breaks.size() < 2 || breaks.front() != a || breaks.back() != b)
      fail("breakpoints must run from a to b");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      if (!(breaks[i] < breaks[i + 1])) fail("breakpoints must be strictly increasing");
    if (pieces.size() + 1 != breaks.size()) fail("one piece per breakpoint gap");
    if (fibers.size() != breaks.size()) fail("one fiber slot per breakpoint");
    for (double p : punctures) {
      std::size_t i = break_index(p);
      if (i == npos || i == 0 || i + 1 == breaks.size())
        fail("punctures must be interior breakpoints");
      if (fibers[i].has_value()) fail("a punctured breakpoint cannot carry a fiber");
    }
    for (std::size_t i = 0; i + 1 < punctures.size(); ++i)
      if (!(punctures[i] < punctures[i + 1])) fail("punctures must be sorted and distinct");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (const auto* s = std::get_if<SinRecip>(&pieces[i]))
        if (breaks[i] < s->c && s->c < breaks[i + 1])
          fail("sinrecip center inside an open piece");
      if (const auto* p = std::get_if<Poly>(&pieces[i]))
        if (p->coeffs.empty()) fail("poly piece with no coefficients");
    }
  }
};

enum class SelectionPolicy { Inf, Sup, Mid };

namespace detail {

// Union of the one-sided limit sets at breakpoint bi (one side at the
// domain endpoints).
inline CompactSet cluster_union(const PiecewiseMap& m, std::size_t bi) {
  std::optional<CompactSet> acc;
  if (bi > 0) acc = cluster(m.pieces[bi - 1], m.breaks[bi], Side::Left);
  if (bi + 1 < m.breaks.size()) {
    CompactSet r = cluster(m.pieces[bi], m.breaks[bi], Side::Right);
    acc = acc ? set_union(*acc, r) : r;
  }
  return *acc;
}

// Fiber at breakpoint bi (declared, or the limit-set union when auto).
inline CompactSet fiber_at(const PiecewiseMap& m, std::size_t bi) {
  if (m.fibers[bi]) return *m.fibers[bi];
  return cluster_union(m, bi);
}

// Fibers replaced by their hulls, no precondition.  phi adds the minimality
// precondition on top of this.
inline PiecewiseMap hull_fibers(const PiecewiseMap& m) {
  PiecewiseMap out = m;
  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    if (m.is_puncture(m.breaks[i])) continue;
    out.fibers[i] = hull(fiber_at(m, i));
  }
  return out;
}

}  // namespace detail

inline CompactSet fiber(const PiecewiseMap& m, double x) {
  if (x < m.a || x > m.b)
    throw PreconditionError("fiber: " + fmt_num(x) + " is outside the domain");
  if (m.is_puncture(x))
    throw PreconditionError("fiber: " + fmt_num(x) + " is a punctured point");
  std::size_t bi = m.break_index(x);
  if (bi != PiecewiseMap::npos) return detail::fiber_at(m, bi);
  return CompactSet::point(eval(m.pieces[m.piece_index(x)], x));
}

// Single-valued map picking one member of every fiber.  Mid projects the
// hull midpoint onto the fiber (nearest member, ties toward the smaller),
// so the result is a genuine selection even through a gap.
inline PiecewiseMap selection(const PiecewiseMap& m, SelectionPolicy policy) {
  PiecewiseMap out = m;
  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    if (m.is_puncture(m.breaks[i])) continue;
    CompactSet f = detail::fiber_at(m, i);
    double y = 0.0;
    switch (policy) {
      case SelectionPolicy::Inf: y = f.min(); break;
      case SelectionPolicy::Sup: y = f.max(); break;
      case SelectionPolicy::Mid: y = f.nearest(0.5 * (f.min() + f.max())); break;
    }
    out.fibers[i] = CompactSet::point(y);
  }
  return out;
}

// Closure of the graph inside (domain minus punctures) x R: every fiber
// absorbs the one-sided limit sets of its neighbour pieces.  Idempotent;
// punctured breakpoints stay outside the domain and gain nothing.
inline PiecewiseMap graph_closure(const PiecewiseMap& m) {
  PiecewiseMap out = m;
  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    if (m.is_puncture(m.breaks[i])) continue;
    CompactSet c = detail::cluster_union(m, i);
    out.fibers[i] = m.fibers[i] ? set_union(*m.fibers[i], c) : c;
  }
  return out;
}

// Equality within tol: same domain and punctures (anything else is an
// error, not inequality), fibers within tol in Hausdorff distance at every
// breakpoint of either map, and pieces within tol between breakpoints.
// Piece agreement is decided on the merged grid: structurally equal
// expressions match exactly, anything else is probed by the adaptive sup
// enclosure and rejected once a certified point difference exceeds tol.
inline bool map_equal(const PiecewiseMap& f, const PiecewiseMap& g, double tol) {
  if (f.a != g.a || f.b != g.b)
    throw PreconditionError("map_equal: domain mismatch");
  if (f.punctures != g.punctures)
    throw PreconditionError("map_equal: puncture mismatch");
  std::vector<double> xs;
  xs.reserve(f.breaks.size() + g.breaks.size());
  xs.insert(xs.end(), f.breaks.begin(), f.breaks.end());
  xs.insert(xs.end(), g.breaks.begin(), g.breaks.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  for (double x : xs) {
    if (f.is_puncture(x)) continue;
    if (hausdorff(fiber(f, x), fiber(g, x)) > tol) return false;
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double u = xs[i], v = xs[i + 1];
    const Expr& pf = f.pieces[f.piece_index(0.5 * (u + v))];
    const Expr& pg = g.pieces[g.piece_index(0.5 * (u + v))];
    if (pf == pg) continue;
    Bracket s = sup_abs_diff(pf, pg, u, v, std::max(tol, kDefaultTol), tol);
    if (s.lo > tol) return false;
  }
  return true;
}

struct ClassificationReport {
  bool is_usco = false;
  bool is_minimal_usco = false;
  bool is_cusco = false;
  bool is_minimal_cusco = false;
  std::vector<Witness> witnesses;  // first failing breakpoint per broken rule
};

// Decides the four classes from the one-sided limit sets at breakpoints.
// With L u R the limit-set union and Fib the fiber:
//   usco          <=>  L u R inside Fib at every breakpoint (closed graph;
//                      boundedness makes closedness equivalent to usc),
//   minimal usco  <=>  usco and (Fib a point or Fib inside L u R),
//   cusco         <=>  usco and every fiber convex,
//   minimal cusco <=>  every fiber convex and the hulled closure of each
//                      extreme selection reproduces the map.
inline ClassificationReport classify(const PiecewiseMap& m) {
  ClassificationReport r;
  bool usco = true, recover = true, convex = true;
  bool w_usco = false, w_recover = false, w_convex = false;
  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    double x = m.breaks[i];
    if (m.is_puncture(x)) continue;
    CompactSet c = detail::cluster_union(m, i);
    CompactSet fib = detail::fiber_at(m, i);
    if (excess(c, fib) > kDefaultTol) {
      usco = false;
      if (!w_usco)
        r.witnesses.push_back({x, "one-sided limit set " + format_set(c) +
                                      " escapes the fiber " + format_set(fib)});
      w_usco = true;
    }
    if (!fib.is_singleton() && excess(fib, c) > kDefaultTol) {
      recover = false;
      if (!w_recover)
        r.witnesses.push_back({x, "fiber " + format_set(fib) +
                                      " is larger than the one-sided limit set " +
                                      format_set(c)});
      w_recover = true;
    }
    if (!fib.is_interval()) {
      convex = false;
      if (!w_convex)
        r.witnesses.push_back({x, "fiber " + format_set(fib) + " is not convex"});
      w_convex = true;
    }
  }
  r.is_usco = usco;
  r.is_minimal_usco = usco && recover;
  r.is_cusco = usco && convex;
  r.is_minimal_cusco = false;
  if (convex) {
    bool eq = true;
    for (SelectionPolicy p : {SelectionPolicy::Sup, SelectionPolicy::Inf}) {
      PiecewiseMap h = detail::hull_fibers(graph_closure(selection(m, p)));
      if (!map_equal(h, m, kDefaultTol)) {
        eq = false;
        for (std::size_t i = 0; i < m.breaks.size() && eq == false; ++i) {
          if (m.is_puncture(m.breaks[i])) continue;
          if (hausdorff(detail::fiber_at(h, i), detail::fiber_at(m, i)) > kDefaultTol) {
            r.witnesses.push_back(
                {m.breaks[i],
                 "hull of the extreme-selection closure gives " +
                     format_set(detail::fiber_at(h, i)) + ", fiber is " +
                     format_set(detail::fiber_at(m, i))});
            break;
          }
        }
        break;
      }
    }
    r.is_minimal_cusco = eq && r.is_cusco;
  }
  return r;
}

// Fiberwise convex hull; the convexification side of the bijection between
// minimal usco and minimal cusco maps.
inline PiecewiseMap phi(const PiecewiseMap& m) {
  ClassificationReport r = classify(m);
  if (!r.is_minimal_usco)
    throw PreconditionError("phi requires a minimal usco map", r.witnesses);
  return detail::hull_fibers(m);
}

// Inverse of phi: the closure of an extreme selection, which is the unique
// minimal usco inside a minimal cusco.  Both extreme closures are computed
// and must agree; a divergence would falsify the minimality certificate.
inline PiecewiseMap phi_inverse(const PiecewiseMap& m) {
  ClassificationReport r = classify(m);
  if (!r.is_minimal_cusco)
    throw PreconditionError("phi_inverse requires a minimal cusco map", r.witnesses);
  PiecewiseMap top = graph_closure(selection(m, SelectionPolicy::Sup));
  PiecewiseMap bot = graph_closure(selection(m, SelectionPolicy::Inf));
  if (!map_equal(top, bot, kDefaultTol))
    throw InvariantError("phi_inverse: the extreme selection closures disagree");
  return top;
}

// Whether the closure fiber of a single-valued map at x is convex: the value
// together with both one-sided limit sets forms one interval.  Continuity
// points pass trivially.
inline bool is_star_qc_at(const PiecewiseMap& m, double x) {
  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    if (m.is_puncture(m.breaks[i])) continue;
    if (!detail::fiber_at(m, i).is_singleton())
      throw PreconditionError(
          "is_star_qc_at requires a single-valued map",
          {{m.breaks[i], "fiber " + format_set(detail::fiber_at(m, i)) +
                             " is not a point"}});
  }
  CompactSet f = fiber(m, x);  // validates x
  std::size_t bi = m.break_index(x);
  if (bi == PiecewiseMap::npos) return true;
  return set_union(f, detail::cluster_union(m, bi)).is_interval();
}

}  // namespace svmap
