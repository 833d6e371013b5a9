#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "svmap/compact_set.hpp"

namespace svmap {

// c0 + c1*x + c2*x^2 + ...; coeffs nonempty.
struct Poly {
  std::vector<double> coeffs;
  bool operator==(const Poly&) const = default;
};

// off + amp * sin(k / (x - c)); k != 0.  Undefined at x == c, where the
// one-sided value sets accumulate on the full band off +- |amp|.
struct SinRecip {
  double amp;
  double k;
  double c;
  double off;
  bool operator==(const SinRecip&) const = default;
};

using Expr = std::variant<Poly, SinRecip>;

enum class Side { Left, Right };

inline double eval(const Poly& p, double x) {
  double r = 0.0;
  for (std::size_t i = p.coeffs.size(); i-- > 0;) r = r * x + p.coeffs[i];
  return r;
}

inline double eval(const SinRecip& s, double x) {
  if (x == s.c)
    throw std::invalid_argument("eval: SinRecip is undefined at its center");
  return s.off + s.amp * std::sin(s.k / (x - s.c));
}

inline double eval(const Expr& e, double x) {
  return std::visit([x](const auto& v) { return eval(v, x); }, e);
}

// One-sided cluster set (set of limit values) of e at x0.  A polynomial is
// continuous; SinRecip is continuous away from its center and sweeps the full
// band on every one-sided neighborhood of the center.
inline CompactSet cluster(const Expr& e, double x0, Side /*side*/ = Side::Right) {
  if (const auto* s = std::get_if<SinRecip>(&e); s && s->c == x0) {
    double a = std::abs(s->amp);
    return CompactSet::interval(s->off - a, s->off + a);
  }
  return CompactSet::point(eval(e, x0));
}

// Upper bound for |e'| on [u, v]; +infinity when the derivative is unbounded
// there (SinRecip with center inside the interval).
inline double deriv_bound(const Poly& p, double u, double v) {
  double m = std::max(std::abs(u), std::abs(v));
  double b = 0.0, pw = 1.0;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
    b += static_cast<double>(i) * std::abs(p.coeffs[i]) * pw;
    pw *= m;
  }
  return b;
}

inline double deriv_bound(const SinRecip& s, double u, double v) {
  if (u <= s.c && s.c <= v) return std::numeric_limits<double>::infinity();
  double d = (s.c < u) ? u - s.c : s.c - v;  // dist([u,v], c) > 0
  return std::abs(s.amp * s.k) / (d * d);
}

inline double deriv_bound(const Expr& e, double u, double v) {
  return std::visit([&](const auto& x) { return deriv_bound(x, u, v); }, e);
}

namespace detail {

// Exact range of sin over the argument interval [lo, hi].
inline Interval sin_range(double lo, double hi) {
  constexpr double pi = std::numbers::pi;
  if (hi - lo >= 2.0 * pi) return {-1.0, 1.0};
  double s1 = std::sin(lo), s2 = std::sin(hi);
  double mx = std::max(s1, s2), mn = std::min(s1, s2);
  double n = std::ceil((lo - pi / 2) / (2 * pi));
  if (pi / 2 + 2 * pi * n <= hi) mx = 1.0;
  n = std::ceil((lo + pi / 2) / (2 * pi));
  if (-pi / 2 + 2 * pi * n <= hi) mn = -1.0;
  return {mn, mx};
}

inline Interval intersect_enclosures(Interval a, Interval b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) {  // FP dust only; both inputs enclose the true range
    double m = 0.5 * (r.lo + r.hi);
    return {m, m};
  }
  return r;
}

}  // namespace detail

// Enclosure of {e(x) : x in [u, v]}.  For SinRecip the trigonometric part is
// resolved exactly from the argument interval, so the enclosure stays tight
// through arbitrarily fast oscillation; with the center inside [u, v] the
// range is the full band.  For Poly: interval Horner sharpened by the
// midpoint derivative bound.
inline Interval value_range(const Poly& p, double u, double v) {
  Interval r{p.coeffs.back(), p.coeffs.back()};
  for (std::size_t i = p.coeffs.size() - 1; i-- > 0;) {
    double a = r.lo * u, b = r.lo * v, c = r.hi * u, d = r.hi * v;
    r = {std::min(std::min(a, b), std::min(c, d)) + p.coeffs[i],
         std::max(std::max(a, b), std::max(c, d)) + p.coeffs[i]};
  }
  double m = 0.5 * (u + v);
  double slack = deriv_bound(p, u, v) * 0.5 * (v - u);
  double pm = eval(p, m);
  return detail::intersect_enclosures(r, {pm - slack, pm + slack});
}

inline Interval value_range(const SinRecip& s, double u, double v) {
  double a = std::abs(s.amp);
  if (u <= s.c && s.c <= v) return {s.off - a, s.off + a};
  double a1 = s.k / (u - s.c), a2 = s.k / (v - s.c);
  Interval sr = detail::sin_range(std::min(a1, a2), std::max(a1, a2));
  double lo = s.amp >= 0 ? s.amp * sr.lo : s.amp * sr.hi;
  double hi = s.amp >= 0 ? s.amp * sr.hi : s.amp * sr.lo;
  return {s.off + lo, s.off + hi};
}

inline Interval value_range(const Expr& e, double u, double v) {
  return std::visit([&](const auto& x) { return value_range(x, u, v); }, e);
}

// Points of (u, v) where sin(k/(x-c)) hits +-1, nearest to each end of the
// argument range; at most four.  Used as sup-localizing samples.  With the
// center on the boundary of [u, v] the argument range is a half-line and the
// points nearest its finite end are returned; with the center strictly
// inside there is no usable sample and the list is empty.
inline std::vector<double> phase_extreme_points(const SinRecip& s, double u, double v) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> out;
  if (u >= v) return out;
  if (u < s.c && s.c < v) return out;
  auto emit = [&](double arg) {
    if (arg == 0.0) return;
    double x = s.c + s.k / arg;
    if (u < x && x < v) out.push_back(x);
  };
  if (s.c == u || s.c == v) {
    double far_end = (s.c == u) ? v : u;
    double a = s.k / (far_end - s.c);  // finite end of the argument half-line
    for (double phase : {pi / 2, -pi / 2}) {
      if (a >= 0.0) {  // arguments sweep [a, +inf)
        double n = std::ceil((a - phase) / (2 * pi));
        emit(phase + 2 * pi * n);
        emit(phase + 2 * pi * (n + 1));
      } else {  // arguments sweep (-inf, a]
        double n = std::floor((a - phase) / (2 * pi));
        emit(phase + 2 * pi * n);
        emit(phase + 2 * pi * (n - 1));
      }
    }
    return out;
  }
  double a1 = s.k / (u - s.c), a2 = s.k / (v - s.c);
  double lo = std::min(a1, a2), hi = std::max(a1, a2);
  for (double phase : {pi / 2, -pi / 2}) {
    double n1 = std::ceil((lo - phase) / (2 * pi));
    double n2 = std::floor((hi - phase) / (2 * pi));
    if (n1 > n2) continue;
    emit(phase + 2 * pi * n1);
    if (n2 != n1) emit(phase + 2 * pi * n2);
  }
  return out;
}

// f - g as a closed-form expression when the class is closed under the
// difference: two polynomials, or two SinRecip with matching frequency and
// center.  nullopt otherwise.
inline std::optional<Expr> diff_expr(const Expr& f, const Expr& g) {
  if (const auto* pf = std::get_if<Poly>(&f)) {
    if (const auto* pg = std::get_if<Poly>(&g)) {
      std::vector<double> c(std::max(pf->coeffs.size(), pg->coeffs.size()), 0.0);
      for (std::size_t i = 0; i < pf->coeffs.size(); ++i) c[i] += pf->coeffs[i];
      for (std::size_t i = 0; i < pg->coeffs.size(); ++i) c[i] -= pg->coeffs[i];
      return Expr{Poly{std::move(c)}};
    }
    return std::nullopt;
  }
  const auto& sf = std::get<SinRecip>(f);
  if (const auto* sg = std::get_if<SinRecip>(&g)) {
    if (sf.k == sg->k && sf.c == sg->c)
      return Expr{SinRecip{sf.amp - sg->amp, sf.k, sf.c, sf.off - sg->off}};
  }
  return std::nullopt;
}

}  // namespace svmap
