#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "oracles.hpp"
#include "svmap/svmap.hpp"

using namespace svmap;

namespace {

PiecewiseMap jump_map() { return example("F21").map(); }
PiecewiseMap band_map() { return example("G21").map(); }

// Linear ramp family converging to the filled jump: 1 + x/n left of 0,
// -1 + x/n right of it, filled fiber at the jump.
PiecewiseMap shifted_band(int n) {
  PiecewiseMap m;
  m.breaks = {-1.0, 0.0, 1.0};
  m.pieces = {Poly{{1.0, 1.0 / n}}, Poly{{-1.0, 1.0 / n}}};
  m.fibers = {std::nullopt, CompactSet::interval(-1.0, 1.0), std::nullopt};
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("fiber evaluation") {
  PiecewiseMap f = jump_map();
  CHECK(fiber(f, 0.5) == CompactSet::point(-1.0));
  CHECK(fiber(f, -0.5) == CompactSet::point(1.0));
  CHECK(fiber(f, 0.0) == make_set({{-1.0, -1.0}, {1.0, 1.0}}));
  CHECK(fiber(f, -1.0) == CompactSet::point(1.0));
  CHECK(fiber(f, 1.0) == CompactSet::point(-1.0));
  CHECK_THROWS_AS(fiber(f, 2.0), PreconditionError);

  SECTION("punctured points have no fiber") {
    PiecewiseMap t = example("fn-trunc(4)").member(2);
    CHECK_THROWS_AS(fiber(t, 1.0 / 3.0), PreconditionError);
    CHECK(fiber(t, 0.9) == CompactSet::point(-1.0));
  }

  SECTION("oscillation points expose the declared fiber") {
    PiecewiseMap s = example("sinrec").map();
    CHECK(fiber(s, 0.0) == CompactSet::point(0.0));
  }
}

TEST_CASE("map validation rejects malformed data") {
  PiecewiseMap m = jump_map();

  SECTION("unsorted breakpoints") {
    m.breaks = {-1.0, 0.5, 0.2, 1.0};
    m.pieces.push_back(Poly{{0.0}});
    m.fibers.push_back(std::nullopt);
    CHECK_THROWS_AS(m.validate(), InvariantError);
  }

  SECTION("fiber list out of step with breakpoints") {
    m.fibers.pop_back();
    CHECK_THROWS_AS(m.validate(), InvariantError);
  }

  SECTION("oscillator center strictly inside a piece") {
    m.pieces[1] = SinRecip{1.0, 1.0, 0.5, 0.0};
    CHECK_THROWS_AS(m.validate(), InvariantError);
  }

  SECTION("fiber declared at a punctured point") {
    m.punctures = {0.0};
    CHECK_THROWS_AS(m.validate(), InvariantError);
  }
}

TEST_CASE("selections pick one value per point") {
  PiecewiseMap f = jump_map();
  PiecewiseMap lo = selection(f, SelectionPolicy::Inf);
  PiecewiseMap hi = selection(f, SelectionPolicy::Sup);
  PiecewiseMap mid = selection(f, SelectionPolicy::Mid);

  CHECK(fiber(lo, 0.0) == CompactSet::point(-1.0));
  CHECK(fiber(hi, 0.0) == CompactSet::point(1.0));
  CHECK(fiber(mid, 0.0) == CompactSet::point(-1.0));
  CHECK(fiber(lo, 0.5) == fiber(f, 0.5));

  SECTION("midpoint projection lands inside the fiber") {
    PiecewiseMap g = band_map();
    CHECK(fiber(selection(g, SelectionPolicy::Mid), 0.0) == CompactSet::point(0.0));
  }
}

TEST_CASE("graph closure adds exactly the cluster values") {
  PiecewiseMap s = example("sinrec").map();
  PiecewiseMap c = graph_closure(s);
  CHECK(fiber(c, 0.0) == CompactSet::interval(-1.0, 1.0));
  CHECK(fiber(c, -1.0) == CompactSet::point(std::sin(-1.0)));
  CHECK(fiber(c, 1.0) == CompactSet::point(std::sin(1.0)));

  SECTION("closure is idempotent") {
    CHECK(serialize_map(graph_closure(c)) == serialize_map(c));
    PiecewiseMap cf = graph_closure(jump_map());
    CHECK(serialize_map(graph_closure(cf)) == serialize_map(cf));
    CHECK(map_equal(cf, jump_map(), 0.0));
  }
}

TEST_CASE("classification of the reference maps") {
  SECTION("two point jump") {
    ClassificationReport r = classify(jump_map());
    CHECK(r.is_usco);
    CHECK(r.is_minimal_usco);
    CHECK_FALSE(r.is_cusco);
    CHECK_FALSE(r.is_minimal_cusco);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses[0].x == 0.0);
    CHECK(r.witnesses[0].reason.find("convex") != std::string::npos);
  }

  SECTION("filled jump") {
    ClassificationReport r = classify(band_map());
    CHECK(r.is_usco);
    CHECK_FALSE(r.is_minimal_usco);
    CHECK(r.is_cusco);
    CHECK(r.is_minimal_cusco);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses[0].reason.find("larger") != std::string::npos);
  }

  SECTION("bare oscillator misses its limit values") {
    ClassificationReport r = classify(example("sinrec").map());
    CHECK_FALSE(r.is_usco);
    CHECK_FALSE(r.is_cusco);
  }

  SECTION("closed oscillator is minimal in both senses") {
    ClassificationReport r = classify(graph_closure(example("sinrec").map()));
    CHECK(r.is_usco);
    CHECK(r.is_minimal_usco);
    CHECK(r.is_cusco);
    CHECK(r.is_minimal_cusco);
    CHECK(r.witnesses.empty());
  }

  SECTION("shifted band is a nonminimal usco but minimal cusco") {
    ClassificationReport r = classify(shifted_band(5));
    CHECK(r.is_usco);
    CHECK_FALSE(r.is_minimal_usco);
    CHECK(r.is_cusco);
    CHECK(r.is_minimal_cusco);
  }
}

TEST_CASE("hull bijection on the jump pair") {
  PiecewiseMap f = jump_map();
  PiecewiseMap g = band_map();
  CHECK(map_equal(phi(f), g, 1e-12));
  CHECK(map_equal(phi_inverse(g), f, 1e-12));

  SECTION("hulling a nonminimal usco is refused with a witness") {
    try {
      phi(g);
      FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("minimal usco") != std::string::npos);
      REQUIRE_FALSE(e.witnesses.empty());
      CHECK(e.witnesses[0].x == 0.0);
    }
  }

  SECTION("inverting a nonconvex map is refused") {
    CHECK_THROWS_AS(phi_inverse(f), PreconditionError);
  }
}

TEST_CASE("map equality") {
  PiecewiseMap f = jump_map();

  SECTION("refined breakpoint grids compare equal") {
    PiecewiseMap r;
    r.breaks = {-1.0, 0.0, 0.5, 1.0};
    r.pieces = {Poly{{1.0}}, Poly{{-1.0}}, Poly{{-1.0}}};
    r.fibers = {std::nullopt, make_set({{-1.0, -1.0}, {1.0, 1.0}}), std::nullopt,
                std::nullopt};
    r.validate();
    CHECK(map_equal(f, r, 1e-12));
    CHECK(map_equal(r, f, 1e-12));
  }

  SECTION("tolerance separates nearby maps") {
    CHECK(map_equal(shifted_band(5), band_map(), 0.21));
    CHECK_FALSE(map_equal(shifted_band(5), band_map(), 0.19));
  }

  SECTION("different domains cannot be compared") {
    PiecewiseMap h;
    h.a = 0.0;
    h.b = 1.0;
    h.breaks = {0.0, 1.0};
    h.pieces = {Poly{{0.0}}};
    h.fibers = {std::nullopt, std::nullopt};
    h.validate();
    CHECK_THROWS_AS(map_equal(f, h, 1e-9), PreconditionError);
  }

  SECTION("puncture sets must agree") {
    PiecewiseMap t = example("fn-trunc(4)").member(2);
    PiecewiseMap u = t;
    u.punctures.clear();
    u.validate();
    CHECK_THROWS_AS(map_equal(t, u, 1e-9), PreconditionError);
  }
}

TEST_CASE("quasicontinuity with dense single valued fibers") {
  CHECK(is_star_qc_at(example("sinrec").map(), 0.0));
  CHECK(is_star_qc_at(example("sinrec").map(), 0.5));
  CHECK_THROWS_AS(is_star_qc_at(band_map(), 0.0), PreconditionError);

  SECTION("the top selection of the filled jump fails at the jump") {
    PiecewiseMap sel = selection(band_map(), SelectionPolicy::Sup);
    CHECK_FALSE(is_star_qc_at(sel, 0.0));
    CHECK(is_star_qc_at(sel, 0.5));
  }

  SECTION("selections of the two point jump also fail there") {
    PiecewiseMap sel = selection(jump_map(), SelectionPolicy::Inf);
    CHECK_FALSE(is_star_qc_at(sel, 0.0));
  }
}

TEST_CASE("bijection and selection laws on random maps") {
  for (unsigned seed = 0; seed < 50; ++seed) {
    PiecewiseMap f = random_minimal_usco(seed);
    INFO("seed " << seed);
    PiecewiseMap g = phi(f);
    REQUIRE(classify(g).is_minimal_cusco);
    REQUIRE(map_equal(phi_inverse(g), f, 1e-12));
    REQUIRE(map_equal(phi(phi_inverse(g)), g, 1e-12));
    for (SelectionPolicy p :
         {SelectionPolicy::Inf, SelectionPolicy::Sup, SelectionPolicy::Mid}) {
      REQUIRE(map_equal(graph_closure(selection(f, p)), f, 1e-12));
    }
  }
}
