#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "svmap/compact_set.hpp"
#include "svmap/enclosure.hpp"
#include "svmap/errors.hpp"
#include "svmap/expr.hpp"
#include "svmap/format.hpp"
#include "svmap/piecewise_map.hpp"

namespace svmap {

// Distance notion between two maps over a common domain.
//   Pointwise       max of fiber distances over a finite point list
//   UniformOnCompact  sup of fiber distances over [k_lo, k_hi]
//   Uniform         sup of fiber distances over the whole domain
//   GraphHausdorff  Hausdorff distance between the graph closures in the
//                   plane (punctured fibers count toward the closure)
struct MapMetric {
  enum class Kind { Pointwise, UniformOnCompact, Uniform, GraphHausdorff };
  Kind kind = Kind::Uniform;
  std::vector<double> points;
  double k_lo = 0.0;
  double k_hi = 0.0;

  static MapMetric pointwise(std::vector<double> pts) {
    if (pts.empty())
      throw std::invalid_argument("pointwise metric needs at least one point");
    return {Kind::Pointwise, std::move(pts), 0.0, 0.0};
  }
  static MapMetric uniform_on(double u, double v) {
    if (!(u < v) || !std::isfinite(u) || !std::isfinite(v))
      throw std::invalid_argument("uniform-on-compact metric needs u < v");
    return {Kind::UniformOnCompact, {}, u, v};
  }
  static MapMetric uniform() { return {Kind::Uniform, {}, 0.0, 0.0}; }
  static MapMetric graph_hausdorff() { return {Kind::GraphHausdorff, {}, 0.0, 0.0}; }
};

inline double fiber_distance(const PiecewiseMap& f, const PiecewiseMap& g, double x) {
  return hausdorff(fiber(f, x), fiber(g, x));
}

namespace detail {

inline void require_common_domain(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (f.a != g.a || f.b != g.b)
    throw PreconditionError("distance: domain mismatch");
  if (f.punctures != g.punctures)
    throw PreconditionError("distance: puncture mismatch");
}

// Sup of fiber distances over [u, v]: exact values at the merged breakpoints
// and window endpoints, certified sup enclosures between them.
inline Bracket sup_fiber_distance(const PiecewiseMap& f, const PiecewiseMap& g,
                                  double u, double v, double tol) {
  std::vector<double> xs{u, v};
  for (const PiecewiseMap* m : {&f, &g})
    for (double x : m->breaks)
      if (u < x && x < v) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double lb = 0.0, ub = 0.0;
  for (double x : xs) {
    if (f.is_puncture(x)) continue;
    double d = fiber_distance(f, g, x);
    lb = std::max(lb, d);
    ub = std::max(ub, d);
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double p = xs[i], q = xs[i + 1], mid = 0.5 * (p + q);
    const Expr& pf = f.pieces[f.piece_index(mid)];
    const Expr& pg = g.pieces[g.piece_index(mid)];
    if (pf == pg) continue;
    Bracket s = sup_abs_diff(pf, pg, p, q, tol);
    lb = std::max(lb, s.lo);
    ub = std::max(ub, s.hi);
  }
  return {lb, std::max(lb, ub)};
}

struct GraphPoint {
  double x, y;
};

// In-place kd-tree over a point cloud; nearest_dist2 prunes by the split
// coordinate, so same-x fiber columns still query in logarithmic time.
class KdTree {
 public:
  explicit KdTree(std::vector<GraphPoint> pts) : p_(std::move(pts)) {
    build(0, p_.size(), 0);
  }

  double nearest_dist2(const GraphPoint& q) const {
    double best2 = std::numeric_limits<double>::infinity();
    query(0, p_.size(), 0, q, best2);
    return best2;
  }

 private:
  std::vector<GraphPoint> p_;

  void build(std::size_t lo, std::size_t hi, int axis) {
    if (hi - lo <= 1) return;
    std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(p_.begin() + lo, p_.begin() + mid, p_.begin() + hi,
                     [axis](const GraphPoint& a, const GraphPoint& b) {
                       return axis == 0 ? a.x < b.x : a.y < b.y;
                     });
    build(lo, mid, axis ^ 1);
    build(mid + 1, hi, axis ^ 1);
  }

  void query(std::size_t lo, std::size_t hi, int axis, const GraphPoint& q,
             double& best2) const {
    if (lo >= hi) return;
    std::size_t mid = lo + (hi - lo) / 2;
    double dx = q.x - p_[mid].x, dy = q.y - p_[mid].y;
    best2 = std::min(best2, dx * dx + dy * dy);
    double split = axis == 0 ? dx : dy;
    std::size_t n_lo = lo, n_hi = mid, f_lo = mid + 1, f_hi = hi;
    if (split >= 0) {
      std::swap(n_lo, f_lo);
      std::swap(n_hi, f_hi);
    }
    query(n_lo, n_hi, axis ^ 1, q, best2);
    if (split * split < best2) query(f_lo, f_hi, axis ^ 1, q, best2);
  }
};

inline constexpr std::size_t kCloudBudget = 2'000'000;

inline void push_cloud_point(std::vector<GraphPoint>& cloud, double x, double y) {
  if (cloud.size() >= kCloudBudget)
    throw InvariantError("graph sampling exceeded the point budget");
  cloud.push_back({x, y});
}

// Cloud within delta/2 of the graph closure and vice versa: fiber parts at
// step delta/2, pieces subdivided until (dx/2)^2 + range^2 <= (delta/2)^2,
// oscillator ends trimmed by delta/4 (the fiber column covers the window).
inline std::vector<GraphPoint> graph_cloud(const PiecewiseMap& m, double delta) {
  PiecewiseMap c = graph_closure(m);
  std::vector<GraphPoint> cloud;

  for (std::size_t i = 0; i < c.breaks.size(); ++i) {
    double x = c.breaks[i];
    CompactSet fs = c.is_puncture(x) ? cluster_union(c, i) : fiber_at(c, i);
    for (const Interval& part : fs.parts()) {
      if (part.width() == 0.0) {
        push_cloud_point(cloud, x, part.lo);
        continue;
      }
      auto n = static_cast<std::size_t>(std::ceil(part.width() / (0.5 * delta)));
      for (std::size_t k = 0; k <= n; ++k)
        push_cloud_point(cloud, x,
                         part.lo + part.width() * static_cast<double>(k) /
                                       static_cast<double>(n));
    }
  }

  double w = 0.25 * delta;
  double half = 0.5 * delta;
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    double u = c.breaks[i], v = c.breaks[i + 1];
    if (const auto* s = std::get_if<SinRecip>(&c.pieces[i])) {
      if (s->c == u) u += w;
      if (s->c == v) v -= w;
    }
    if (!(u < v)) continue;
    const Expr& e = c.pieces[i];
    std::vector<std::pair<double, double>> stack{{u, v}};
    while (!stack.empty()) {
      auto [p, q] = stack.back();
      stack.pop_back();
      Interval r = value_range(e, p, q);
      double hx = 0.5 * (q - p);
      if (hx * hx + r.width() * r.width() <= half * half) {
        push_cloud_point(cloud, p, eval(e, p));
        push_cloud_point(cloud, q, eval(e, q));
        continue;
      }
      double mid = 0.5 * (p + q);
      if (!(p < mid && mid < q))
        throw InvariantError("graph sampling cannot reach the requested density");
      stack.push_back({p, mid});
      stack.push_back({mid, q});
    }
  }
  return cloud;
}

inline double cloud_excess(const std::vector<GraphPoint>& from, const KdTree& to) {
  double worst2 = 0.0;
  for (const GraphPoint& p : from) worst2 = std::max(worst2, to.nearest_dist2(p));
  return std::sqrt(worst2);
}

}  // namespace detail

// Distance bracket of width at most tol (exact for Pointwise).
inline Bracket distance(const PiecewiseMap& f, const PiecewiseMap& g,
                        const MapMetric& metric, double tol = 1e-6) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  detail::require_common_domain(f, g);
  switch (metric.kind) {
    case MapMetric::Kind::Pointwise: {
      if (metric.points.empty())
        throw std::invalid_argument("pointwise metric needs at least one point");
      double d = 0.0;
      for (double x : metric.points) d = std::max(d, fiber_distance(f, g, x));
      return {d, d};
    }
    case MapMetric::Kind::UniformOnCompact: {
      if (metric.k_lo < f.a || metric.k_hi > f.b)
        throw PreconditionError("distance: compact window [" + fmt_num(metric.k_lo) +
                                ", " + fmt_num(metric.k_hi) +
                                "] escapes the domain");
      return detail::sup_fiber_distance(f, g, metric.k_lo, metric.k_hi, tol);
    }
    case MapMetric::Kind::Uniform:
      return detail::sup_fiber_distance(f, g, f.a, f.b, tol);
    case MapMetric::Kind::GraphHausdorff: {
      double delta = 0.5 * tol;
      std::vector<detail::GraphPoint> cf = detail::graph_cloud(f, delta);
      std::vector<detail::GraphPoint> cg = detail::graph_cloud(g, delta);
      detail::KdTree tf(cf), tg(cg);
      double h = std::max(detail::cloud_excess(cf, tg), detail::cloud_excess(cg, tf));
      return {std::max(h - delta, 0.0), h + delta};
    }
  }
  throw InvariantError("distance: unknown metric kind");
}

struct ConvergenceRow {
  int n = 0;
  Bracket dist{0.0, 0.0};
};

// Certified convergence check of family(n) -> limit along ns.  Distances
// are enclosed to a quarter of tol; the verdict asks whether the last
// member is certified closer than tol.  witness_n carries the member with
// the largest certified lower bound, the strongest counterexample seen.
struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool converges = false;
  int witness_n = 0;
  double witness_lo = 0.0;
};

inline ConvergenceReport converge(const std::function<PiecewiseMap(int)>& family,
                                  const PiecewiseMap& limit, const MapMetric& metric,
                                  const std::vector<int>& ns, double tol = 1e-6) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (ns.empty()) throw std::invalid_argument("converge needs at least one index");
  ConvergenceReport rep;
  bool have_witness = false;
  for (int n : ns) {
    Bracket d = distance(family(n), limit, metric, 0.25 * tol);
    rep.rows.push_back({n, d});
    if (!have_witness || d.lo > rep.witness_lo) {
      rep.witness_lo = d.lo;
      rep.witness_n = n;
      have_witness = true;
    }
  }
  rep.converges = rep.rows.back().dist.hi < tol;
  return rep;
}

}  // namespace svmap
