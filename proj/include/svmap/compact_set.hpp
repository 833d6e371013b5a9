#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "svmap/errors.hpp"

namespace svmap {

inline constexpr double kDefaultTol = 1e-12;

// Closed interval [lo, hi]; lo == hi is a point.
struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

// A nonempty compact subset of the line: finitely many disjoint closed
// intervals, sorted.  Normalized on construction; intervals whose gap is
// below kMergeGap are fused, so equal sets have equal representations.
class CompactSet {
 public:
  static constexpr double kMergeGap = 1e-12;

  explicit CompactSet(std::vector<Interval> parts) : parts_(std::move(parts)) {
    normalize();
  }
  CompactSet(std::initializer_list<Interval> parts)
      : CompactSet(std::vector<Interval>(parts)) {}

  static CompactSet point(double x) { return CompactSet{{x, x}}; }
  static CompactSet interval(double lo, double hi) { return CompactSet{{lo, hi}}; }

  const std::vector<Interval>& parts() const { return parts_; }
  double min() const { return parts_.front().lo; }
  double max() const { return parts_.back().hi; }

  bool is_singleton() const {
    return parts_.size() == 1 && parts_[0].lo == parts_[0].hi;
  }
  // Convex, i.e. a single closed interval.
  bool is_interval() const { return parts_.size() == 1; }

  bool contains(double x) const {
    for (const auto& p : parts_)
      if (p.lo <= x && x <= p.hi) return true;
    return false;
  }

  // Exact set inclusion: every part fits inside a single part of other.
  bool subset_of(const CompactSet& other) const {
    for (const auto& p : parts_) {
      bool covered = false;
      for (const auto& q : other.parts_)
        if (q.lo <= p.lo && p.hi <= q.hi) { covered = true; break; }
      if (!covered) return false;
    }
    return true;
  }

  // Member closest to y; ties resolved toward the smaller member.
  double nearest(double y) const {
    double best = parts_.front().lo;
    double bestd = std::abs(y - best);
    for (const auto& p : parts_) {
      double cand = (y < p.lo) ? p.lo : (y > p.hi ? p.hi : y);
      double d = std::abs(y - cand);
      if (d < bestd || (d == bestd && cand < best)) { best = cand; bestd = d; }
    }
    return best;
  }

  bool operator==(const CompactSet&) const = default;

 private:
  std::vector<Interval> parts_;

  void normalize() {
    if (parts_.empty())
      throw std::invalid_argument("CompactSet: empty interval list");
    for (const auto& p : parts_) {
      if (!std::isfinite(p.lo) || !std::isfinite(p.hi))
        throw std::invalid_argument("CompactSet: non-finite endpoint");
      if (p.lo > p.hi)
        throw std::invalid_argument("CompactSet: interval with lo > hi");
    }
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) {
                return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    std::vector<Interval> merged;
    merged.push_back(parts_.front());
    for (std::size_t i = 1; i < parts_.size(); ++i) {
      Interval& cur = merged.back();
      const Interval& nxt = parts_[i];
      if (nxt.lo - cur.hi < kMergeGap)
        cur.hi = std::max(cur.hi, nxt.hi);
      else
        merged.push_back(nxt);
    }
    parts_ = std::move(merged);
  }
};

inline CompactSet make_set(std::vector<Interval> parts) {
  return CompactSet(std::move(parts));
}

// Convex hull [min A, max A].
inline CompactSet hull(const CompactSet& a) {
  return CompactSet::interval(a.min(), a.max());
}

inline CompactSet set_union(const CompactSet& a, const CompactSet& b) {
  std::vector<Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return CompactSet(std::move(parts));
}

// d(z, A) = min over members.  Exact.
inline double point_distance(double z, const CompactSet& a) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a.parts()) {
    double d = (z < p.lo) ? p.lo - z : (z > p.hi ? z - p.hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

// e_d(A, B) = sup_{a in A} d(a, B).  The distance-to-B function is piecewise
// linear with slopes +-1, so the sup over A is attained either at an endpoint
// of a part of A or at a midpoint of a gap of B that A covers.  Evaluating
// that finite candidate set gives the exact value.
inline double excess(const CompactSet& a, const CompactSet& b) {
  double best = 0.0;
  for (const auto& p : a.parts()) {
    best = std::max(best, point_distance(p.lo, b));
    best = std::max(best, point_distance(p.hi, b));
  }
  const auto& bp = b.parts();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    double mid = 0.5 * (bp[i].hi + bp[i + 1].lo);
    if (a.contains(mid)) best = std::max(best, point_distance(mid, b));
  }
  return best;
}

inline double hausdorff(const CompactSet& a, const CompactSet& b) {
  return std::max(excess(a, b), excess(b, a));
}

// Open eps-parallel body: union of open balls around A, as a list of disjoint
// open intervals.  Touching intervals stay separate: the shared endpoint is
// not in the union (its distance to A is exactly eps).
inline std::vector<Interval> enlarge(const CompactSet& a, double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("enlarge: eps must be positive");
  std::vector<Interval> out;
  for (const auto& p : a.parts()) {
    Interval e{p.lo - eps, p.hi + eps};
    if (!out.empty() && e.lo < out.back().hi)
      out.back().hi = std::max(out.back().hi, e.hi);
    else
      out.push_back(e);
  }
  return out;
}

// Containment of a compact set in a union of disjoint open intervals.
inline bool covered_by_open(const CompactSet& a, std::span<const Interval> open_cover) {
  for (const auto& p : a.parts()) {
    bool covered = false;
    for (const auto& c : open_cover)
      if (c.lo < p.lo && p.hi < c.hi) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

// {min A, max A} of a convex set.  Errors on non-convex input: for a union of
// intervals the extreme points of the pieces are not ext(A).
inline CompactSet extreme_points(const CompactSet& a) {
  if (!a.is_interval())
    throw std::invalid_argument("extreme_points: set is not convex");
  return CompactSet{{a.min(), a.min()}, {a.max(), a.max()}};
}

}  // namespace svmap
