#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "svmap/errors.hpp"
#include "svmap/expr.hpp"

namespace svmap {

// Two-sided enclosure of a supremum: lo <= sup <= hi, hi - lo <= the
// tolerance the producing call was asked for.
struct Bracket {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

namespace detail {

inline std::optional<double> safe_eval(const Expr& e, double x) {
  if (const auto* s = std::get_if<SinRecip>(&e); s && s->c == x) return std::nullopt;
  return eval(e, x);
}

// Two-sided bounds for sup |f - g| on [x1, x2].  ub: exact range of the
// difference when it is again a closed-form expression, worst-case pairing
// of the two ranges otherwise; both stay finite and tight through
// oscillation because SinRecip ranges are computed from the argument
// interval.  lb: a SinRecip range is attained on the closed segment (as
// values, or as cluster limits at a center), and at an attainment point the
// other side lies inside its own enclosure, so the distance from the
// attained endpoint to that enclosure is a valid sup lower bound.  A
// SinRecip difference attains its range, so there the sup is pinned.  Poly
// enclosures overestimate and contribute no attained endpoint.
struct SupDiffBounds {
  double ub, lb;
};

inline SupDiffBounds sup_diff_bounds(const Expr& f, const Expr& g,
                                     const std::optional<Expr>& diff,
                                     double x1, double x2) {
  if (diff) {
    Interval r = value_range(*diff, x1, x2);
    double ub = std::max(std::abs(r.lo), std::abs(r.hi));
    return {ub, std::holds_alternative<SinRecip>(*diff) ? ub : 0.0};
  }
  Interval rf = value_range(f, x1, x2);
  Interval rg = value_range(g, x1, x2);
  auto outside = [](double y, const Interval& r) {
    return std::max({r.lo - y, y - r.hi, 0.0});
  };
  double lb = 0.0;
  if (std::holds_alternative<SinRecip>(f))
    lb = std::max(outside(rf.lo, rg), outside(rf.hi, rg));
  if (std::holds_alternative<SinRecip>(g))
    lb = std::max({lb, outside(rg.lo, rf), outside(rg.hi, rf)});
  return {std::max(rf.hi - rg.lo, rg.hi - rf.lo), lb};
}

inline void collect_samples(const Expr& e, double x1, double x2,
                            std::vector<double>& xs) {
  if (const auto* s = std::get_if<SinRecip>(&e)) {
    for (double x : phase_extreme_points(*s, x1, x2)) xs.push_back(x);
  }
}

}  // namespace detail

// Enclosure of sup over (u, v) of |f - g| with width <= tol.  Branch and
// bound on subintervals: upper bounds from value ranges, lower bounds from
// point evaluations (midpoints plus the oscillation extremes of any SinRecip
// side) and from the attained range endpoints of a SinRecip side.  Segments
// shrink toward a SinRecip center, where the range of the oscillating side
// is exact, so the bounds close in a logarithmic number of splits.  The one shape with no finite certificate is a pair of distinct
// oscillators sharing a center but not a frequency; refinement then stalls
// and the call reports the tolerance as unattainable.
//
// stop_above: early exit once the lower bound alone exceeds it (the bracket
// may then be wider than tol); callers deciding "equal within tol" use this.
inline Bracket sup_abs_diff(const Expr& f, const Expr& g, double u, double v,
                            double tol,
                            double stop_above = std::numeric_limits<double>::infinity()) {
  if (f == g) return {0.0, 0.0};
  const std::optional<Expr> diff = diff_expr(f, g);
  const double tol_eff = std::max(tol * 0.95, 1e-13);

  double lb = 0.0;
  auto probe = [&](double x) {
    if (x <= u || x >= v) return;
    auto fx = detail::safe_eval(f, x), gx = detail::safe_eval(g, x);
    if (fx && gx) lb = std::max(lb, std::abs(*fx - *gx));
  };
  auto probe_segment = [&](double x1, double x2) {
    probe(0.5 * (x1 + x2));
    std::vector<double> xs;
    detail::collect_samples(f, x1, x2, xs);
    detail::collect_samples(g, x1, x2, xs);
    for (double x : xs) probe(x);
  };
  // Endpoint limits are valid sup candidates for the open interval.
  for (double x : {u, v}) {
    auto fx = detail::safe_eval(f, x), gx = detail::safe_eval(g, x);
    if (fx && gx) lb = std::max(lb, std::abs(*fx - *gx));
  }

  struct Task {
    double x1, x2, ub;
    bool operator<(const Task& o) const { return ub < o.ub; }
  };
  std::priority_queue<Task> heap;
  probe_segment(u, v);
  auto root = detail::sup_diff_bounds(f, g, diff, u, v);
  lb = std::max(lb, root.lb);
  heap.push({u, v, root.ub});

  const int kMaxPops = 200000;
  for (int pops = 0; !heap.empty(); ++pops) {
    Task top = heap.top();
    if (top.ub <= lb + tol_eff) return {lb, std::max(lb, top.ub)};
    if (lb > stop_above) return {lb, std::max(lb, top.ub)};
    heap.pop();
    double m = 0.5 * (top.x1 + top.x2);
    if (pops >= kMaxPops || m <= top.x1 || m >= top.x2)
      throw InvariantError("sup enclosure cannot reach the requested tolerance");
    for (auto [x1, x2] : {std::pair{top.x1, m}, std::pair{m, top.x2}}) {
      auto b = detail::sup_diff_bounds(f, g, diff, x1, x2);
      lb = std::max(lb, b.lb);
      probe_segment(x1, x2);
      if (b.ub > lb) heap.push({x1, x2, b.ub});
    }
  }
  return {lb, lb};
}

}  // namespace svmap
