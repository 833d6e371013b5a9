#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svmap/compact_set.hpp"
#include "svmap/expr.hpp"
#include "svmap/format.hpp"
#include "svmap/piecewise_map.hpp"

namespace svmap {

namespace detail {

inline std::string px2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// In-order adaptive refinement: the caller has already emitted (p, f(p)).
inline void refine_polyline(const Expr& e, double p, double q, double dx_min,
                            double dy_ok, int depth,
                            std::vector<std::pair<double, double>>& pts) {
  if (depth >= 22 || q - p <= dx_min ||
      value_range(e, p, q).width() <= dy_ok) {
    pts.emplace_back(q, eval(e, q));
    return;
  }
  double mid = 0.5 * (p + q);
  refine_polyline(e, p, mid, dx_min, dy_ok, depth + 1, pts);
  refine_polyline(e, mid, q, dx_min, dy_ok, depth + 1, pts);
}

}  // namespace detail

// Static SVG 1.1 view of the map: pieces as adaptively refined polylines,
// breakpoint fibers as vertical bars (dots for point fibers), punctured
// one-sided limits as open circles.  Default vertical range pads the
// attained values by 0.5 on both sides.
inline std::string plot_svg(const PiecewiseMap& m,
                            std::optional<Interval> y_range = std::nullopt) {
  if (y_range && !(y_range->lo < y_range->hi))
    throw std::invalid_argument("y-range needs lo < hi");
  double span = m.b - m.a;
  double trim = span / 4000.0;

  std::vector<CompactSet> bars;  // aligned with breaks
  double ylo = 0.0, yhi = 0.0;
  bool have_y = false;
  auto absorb = [&](double v) {
    ylo = have_y ? std::min(ylo, v) : v;
    yhi = have_y ? std::max(yhi, v) : v;
    have_y = true;
  };

  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    bars.push_back(m.is_puncture(m.breaks[i]) ? detail::cluster_union(m, i)
                                              : detail::fiber_at(m, i));
    absorb(bars.back().min());
    absorb(bars.back().max());
  }
  for (std::size_t i = 0; i < m.pieces.size(); ++i) {
    double u = m.breaks[i], v = m.breaks[i + 1];
    if (const auto* s = std::get_if<SinRecip>(&m.pieces[i])) {
      if (s->c == u) u += trim;
      if (s->c == v) v -= trim;
      Interval r = value_range(m.pieces[i], u, v);
      absorb(r.lo);
      absorb(r.hi);
    }
    for (int k = 0; k <= 256; ++k)
      absorb(eval(m.pieces[i], u + (v - u) * k / 256.0));
  }
  if (y_range) {
    ylo = y_range->lo;
    yhi = y_range->hi;
  } else {
    ylo -= 0.5;
    yhi += 0.5;
  }

  auto px = [&](double x) { return 50.0 + (x - m.a) / span * 730.0; };
  auto py = [&](double y) { return 520.0 - (y - ylo) / (yhi - ylo) * 500.0; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
       "width=\"800\" height=\"560\" viewBox=\"0 0 800 560\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"560\" fill=\"white\"/>\n";
  s += "<rect x=\"50\" y=\"20\" width=\"730\" height=\"500\" fill=\"none\" "
       "stroke=\"#999999\"/>\n";
  if (ylo < 0.0 && 0.0 < yhi)
    s += "<line x1=\"50\" y1=\"" + detail::px2(py(0.0)) + "\" x2=\"780\" y2=\"" +
         detail::px2(py(0.0)) +
         "\" stroke=\"#cccccc\" stroke-dasharray=\"4 4\"/>\n";
  if (m.a < 0.0 && 0.0 < m.b)
    s += "<line x1=\"" + detail::px2(px(0.0)) + "\" y1=\"20\" x2=\"" +
         detail::px2(px(0.0)) +
         "\" y2=\"520\" stroke=\"#cccccc\" stroke-dasharray=\"4 4\"/>\n";

  for (std::size_t i = 0; i < m.pieces.size(); ++i) {
    double u = m.breaks[i], v = m.breaks[i + 1];
    if (const auto* sr = std::get_if<SinRecip>(&m.pieces[i])) {
      if (sr->c == u) u += trim;
      if (sr->c == v) v -= trim;
    }
    std::vector<std::pair<double, double>> pts;
    pts.emplace_back(u, eval(m.pieces[i], u));
    detail::refine_polyline(m.pieces[i], u, v, span / 1600.0,
                            (yhi - ylo) / 250.0, 0, pts);
    s += "<polyline fill=\"none\" stroke=\"#2b6cb0\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k) s += ' ';
      s += detail::px2(px(pts[k].first)) + ',' + detail::px2(py(pts[k].second));
    }
    s += "\"/>\n";
  }

  for (std::size_t i = 0; i < m.breaks.size(); ++i) {
    double x = px(m.breaks[i]);
    bool punctured = m.is_puncture(m.breaks[i]);
    for (const Interval& part : bars[i].parts()) {
      if (part.width() == 0.0) {
        if (punctured)
          s += "<circle cx=\"" + detail::px2(x) + "\" cy=\"" +
               detail::px2(py(part.lo)) +
               "\" r=\"4\" fill=\"white\" stroke=\"#2b6cb0\" stroke-width=\"1.5\"/>\n";
        else
          s += "<circle cx=\"" + detail::px2(x) + "\" cy=\"" +
               detail::px2(py(part.lo)) + "\" r=\"3\" fill=\"#2b6cb0\"/>\n";
      } else {
        s += "<line x1=\"" + detail::px2(x) + "\" y1=\"" + detail::px2(py(part.lo)) +
             "\" x2=\"" + detail::px2(x) + "\" y2=\"" + detail::px2(py(part.hi)) +
             "\" stroke=\"#2b6cb0\" stroke-width=\"3\"" +
             (punctured ? " stroke-dasharray=\"3 3\"" : "") + "/>\n";
        if (punctured)
          for (double end : {part.lo, part.hi})
            s += "<circle cx=\"" + detail::px2(x) + "\" cy=\"" +
                 detail::px2(py(end)) +
                 "\" r=\"4\" fill=\"white\" stroke=\"#2b6cb0\" stroke-width=\"1.5\"/>\n";
      }
    }
  }

  s += "<text x=\"50\" y=\"536\" font-family=\"monospace\" font-size=\"12\" "
       "fill=\"#333333\">" + fmt_num(m.a) + "</text>\n";
  s += "<text x=\"780\" y=\"536\" text-anchor=\"end\" font-family=\"monospace\" "
       "font-size=\"12\" fill=\"#333333\">" + fmt_num(m.b) + "</text>\n";
  s += "<text x=\"46\" y=\"524\" text-anchor=\"end\" font-family=\"monospace\" "
       "font-size=\"12\" fill=\"#333333\">" + fmt_num(ylo) + "</text>\n";
  s += "<text x=\"46\" y=\"30\" text-anchor=\"end\" font-family=\"monospace\" "
       "font-size=\"12\" fill=\"#333333\">" + fmt_num(yhi) + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace svmap
