#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "svmap/compact_set.hpp"
#include "svmap/expr.hpp"
#include "svmap/piecewise_map.hpp"

namespace svmap {

// Built-in map, or family of maps indexed by a positive integer.
struct NamedExample {
  std::string name;
  std::string summary;
  std::variant<PiecewiseMap, std::function<PiecewiseMap(int)>> value;

  bool is_family() const { return value.index() == 1; }

  const PiecewiseMap& map() const {
    if (const auto* m = std::get_if<PiecewiseMap>(&value)) return *m;
    throw std::invalid_argument(name + " is a family; pick a member with n");
  }

  PiecewiseMap member(int n) const {
    if (const auto* f = std::get_if<std::function<PiecewiseMap(int)>>(&value))
      return (*f)(n);
    throw std::invalid_argument(name + " is a single map, not a family");
  }
};

namespace detail {

// Jump from 1 to -1 with the two-point fiber at the jump.
inline PiecewiseMap make_f21() {
  PiecewiseMap m;
  m.a = -1.0;
  m.b = 1.0;
  m.breaks = {-1.0, 0.0, 1.0};
  m.pieces = {Poly{{1.0}}, Poly{{-1.0}}};
  m.fibers = {std::nullopt, make_set({{-1.0, -1.0}, {1.0, 1.0}}), std::nullopt};
  return m;
}

// Same jump with the filled fiber; the convexification of the map above.
inline PiecewiseMap make_g21() {
  PiecewiseMap m = make_f21();
  m.fibers[1] = CompactSet::interval(-1.0, 1.0);
  return m;
}

// sin(1/x) with the value pinned to 0 at the origin.
inline PiecewiseMap make_sinrec() {
  PiecewiseMap m;
  m.a = -1.0;
  m.b = 1.0;
  m.breaks = {-1.0, 0.0, 1.0};
  m.pieces = {SinRecip{1.0, 1.0, 0.0, 0.0}, SinRecip{1.0, 1.0, 0.0, 0.0}};
  m.fibers = {std::nullopt, CompactSet::point(0.0), std::nullopt};
  return m;
}

// Jump with a sin(1/x) plug on (0, t_n), t_n = 2/((4n-1)pi); the plug ends
// on a trough, so the right junction is continuous.
inline PiecewiseMap make_pn(int n) {
  if (n < 1) throw std::invalid_argument("Pn needs n >= 1");
  double t = 2.0 / ((4.0 * n - 1.0) * std::numbers::pi);
  PiecewiseMap m;
  m.a = -1.0;
  m.b = 1.0;
  m.breaks = {-1.0, 0.0, t, 1.0};
  m.pieces = {Poly{{1.0}}, SinRecip{1.0, 1.0, 0.0, 0.0}, Poly{{-1.0}}};
  m.fibers = {std::nullopt, CompactSet::interval(-1.0, 1.0), std::nullopt,
              std::nullopt};
  return m;
}

// Continuous ramp of slope -2n joining 1 to -1 on (0, 1/n).
inline PiecewiseMap make_gn(int n) {
  if (n < 1) throw std::invalid_argument("gn needs n >= 1");
  PiecewiseMap m;
  m.a = -1.0;
  m.b = 1.0;
  if (n == 1) {
    m.breaks = {-1.0, 0.0, 1.0};
    m.pieces = {Poly{{1.0}}, Poly{{1.0, -2.0}}};
  } else {
    m.breaks = {-1.0, 0.0, 1.0 / n, 1.0};
    m.pieces = {Poly{{1.0}}, Poly{{1.0, -2.0 * n}}, Poly{{-1.0}}};
  }
  m.fibers.assign(m.breaks.size(), std::nullopt);
  return m;
}

// Step at 1/n on the domain punctured at 1/j for j = 2..m.  A truncation:
// only finitely many reciprocals are removed, so the domain stays an
// ordinary finite union of intervals.
inline PiecewiseMap make_fn_trunc(int m_cut, int n) {
  if (m_cut < 2) throw std::invalid_argument("fn-trunc needs m >= 2");
  if (n < 2 || n > m_cut)
    throw std::invalid_argument("fn-trunc(" + std::to_string(m_cut) +
                                ") has members n = 2.." + std::to_string(m_cut));
  PiecewiseMap m;
  m.a = -1.0;
  m.b = 1.0;
  m.breaks.push_back(-1.0);
  for (int j = m_cut; j >= 2; --j) m.breaks.push_back(1.0 / j);
  m.breaks.push_back(1.0);
  m.punctures.assign(m.breaks.begin() + 1, m.breaks.end() - 1);
  double t = 1.0 / n;
  for (std::size_t i = 0; i + 1 < m.breaks.size(); ++i)
    m.pieces.push_back(Poly{{m.breaks[i + 1] <= t ? 1.0 : -1.0}});
  m.fibers.assign(m.breaks.size(), std::nullopt);
  return m;
}

inline double next_double(std::mt19937_64& gen, double a, double b) {
  double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

inline int next_int(std::mt19937_64& gen, int lo, int hi) {
  return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace detail

struct CorpusEntry {
  std::string name;
  std::string summary;
  bool family = false;
};

inline std::vector<CorpusEntry> corpus_listing() {
  return {
      {"F21", "jump with the two-point fiber {-1, 1} at 0; minimal usco, not cusco",
       false},
      {"G21", "jump with the filled fiber [-1, 1] at 0; minimal cusco, not minimal usco",
       false},
      {"sinrec", "sin(1/x) pinned to 0 at the origin; not usco, *-qc at 0", false},
      {"Pn", "jump with a sin(1/x) plug on (0, 2/((4n-1)pi)); in both minimal classes",
       true},
      {"gn", "continuous ramp of slope -2n joining 1 to -1 on (0, 1/n)", true},
      {"fn-trunc(m)", "step at 1/n on the domain punctured at 1/j, j = 2..m", true},
  };
}

inline NamedExample example(const std::string& name) {
  if (name == "F21") return {name, corpus_listing()[0].summary, detail::make_f21()};
  if (name == "G21") return {name, corpus_listing()[1].summary, detail::make_g21()};
  if (name == "sinrec")
    return {name, corpus_listing()[2].summary, detail::make_sinrec()};
  if (name == "Pn")
    return {name, corpus_listing()[3].summary,
            std::function<PiecewiseMap(int)>(detail::make_pn)};
  if (name == "gn")
    return {name, corpus_listing()[4].summary,
            std::function<PiecewiseMap(int)>(detail::make_gn)};
  if (name.rfind("fn-trunc(", 0) == 0 && name.back() == ')') {
    int m_cut = 0;
    try {
      std::size_t used = 0;
      std::string digits = name.substr(9, name.size() - 10);
      m_cut = std::stoi(digits, &used);
      if (used != digits.size()) m_cut = 0;
    } catch (const std::exception&) {
      m_cut = 0;
    }
    if (m_cut < 2)
      throw std::invalid_argument("fn-trunc takes an integer m >= 2, as fn-trunc(4)");
    return {name, corpus_listing()[5].summary,
            std::function<PiecewiseMap(int)>(
                [m_cut](int n) { return detail::make_fn_trunc(m_cut, n); })};
  }
  std::string names;
  for (const CorpusEntry& e : corpus_listing())
    names += (names.empty() ? "" : ", ") + e.name;
  throw std::invalid_argument("unknown example '" + name + "'; have: " + names);
}

struct RandomMapParams {
  int interior_breakpoints = 2;
  double poly_weight = 3.0;
  double sinrecip_weight = 1.0;
  int max_degree = 3;
};

// Seeded map on [-1, 1] with jittered breakpoints and drawn pieces, every
// fiber auto.  Auto fibers equal the one-sided limit unions, which makes
// the result a minimal usco by construction.  Oscillator frequency stays
// at 1 so any two drawn pieces with a shared center remain comparable by
// the exact difference fast path.
inline PiecewiseMap random_minimal_usco(std::uint64_t seed,
                                        const RandomMapParams& params = {}) {
  if (params.interior_breakpoints < 0)
    throw std::invalid_argument("interior_breakpoints must be >= 0");
  if (params.max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  if (params.poly_weight < 0.0 || params.sinrecip_weight < 0.0 ||
      params.poly_weight + params.sinrecip_weight <= 0.0)
    throw std::invalid_argument("piece weights must be nonnegative with positive sum");
  std::mt19937_64 gen(seed);
  PiecewiseMap m;
  m.a = -1.0;
  m.b = 1.0;
  int k = params.interior_breakpoints;
  double cell = 2.0 / (k + 1);
  m.breaks.push_back(m.a);
  for (int i = 0; i < k; ++i) {
    double center = -1.0 + cell * (i + 1);
    m.breaks.push_back(center + 0.3 * cell * detail::next_double(gen, -1.0, 1.0));
  }
  m.breaks.push_back(m.b);
  for (int i = 0; i <= k; ++i) {
    double r =
        detail::next_double(gen, 0.0, params.poly_weight + params.sinrecip_weight);
    if (r < params.poly_weight || params.sinrecip_weight == 0.0) {
      int deg = detail::next_int(gen, 0, params.max_degree);
      std::vector<double> coeffs;
      for (int d = 0; d <= deg; ++d)
        coeffs.push_back(detail::next_double(gen, -1.5, 1.5));
      m.pieces.push_back(Poly{std::move(coeffs)});
    } else {
      double amp = detail::next_double(gen, 0.3, 1.5);
      if (detail::next_int(gen, 0, 1) == 1) amp = -amp;
      double c = detail::next_int(gen, 0, 1) == 0 ? m.breaks[i] : m.breaks[i + 1];
      m.pieces.push_back(SinRecip{amp, 1.0, c, detail::next_double(gen, -1.0, 1.0)});
    }
  }
  m.fibers.assign(m.breaks.size(), std::nullopt);
  m.validate();
  return m;
}

// Seeded compact set inside [-10, 10]: up to max_parts parts, around a
// third of them points, gaps of at least 0.05.
inline CompactSet random_compact_set(std::uint64_t seed, int max_parts = 4) {
  if (max_parts < 1) throw std::invalid_argument("max_parts must be >= 1");
  std::mt19937_64 gen(seed);
  int nparts = detail::next_int(gen, 1, max_parts);
  double w_max = 6.0 / max_parts;
  double g_max = std::min(2.0, 6.0 / max_parts);
  std::vector<Interval> parts;
  double cursor = detail::next_double(gen, -10.0, -2.0);
  for (int i = 0; i < nparts; ++i) {
    double width =
        detail::next_int(gen, 0, 2) == 0 ? 0.0 : detail::next_double(gen, 0.0, w_max);
    parts.push_back({cursor, cursor + width});
    cursor += width + detail::next_double(gen, 0.05, g_max);
  }
  return make_set(std::move(parts));
}

}  // namespace svmap
