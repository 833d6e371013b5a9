#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "svmap/svmap.hpp"

using namespace svmap;

TEST_CASE("expression evaluation") {
  Expr p = Poly{{1.0, -4.0, 2.0}};
  CHECK(eval(p, 3.0) == 1.0 - 4.0 * 3.0 + 2.0 * 9.0);
  CHECK(eval(p, 0.0) == 1.0);

  Expr s = SinRecip{2.0, 3.0, 1.0, -0.5};
  CHECK(eval(s, 2.0) == -0.5 + 2.0 * std::sin(3.0));
  CHECK_THROWS_AS(eval(s, 1.0), std::invalid_argument);
}

TEST_CASE("one sided cluster sets") {
  SECTION("smooth pieces cluster to the limit value") {
    Expr p = Poly{{1.0, -2.0}};
    CHECK(cluster(p, 0.25, Side::Left) == CompactSet::point(0.5));
    CHECK(cluster(p, 0.25, Side::Right) == CompactSet::point(0.5));

    for (double x0 : {-0.7, 0.0, 0.3}) {
      double h = 1e-11;
      CHECK(std::abs(cluster(p, x0, Side::Left).min() - eval(p, x0 - h)) <= 1e-9);
      CHECK(std::abs(cluster(p, x0, Side::Right).min() - eval(p, x0 + h)) <= 1e-9);
    }
  }

  SECTION("oscillators cluster to the full band at their center") {
    Expr s = SinRecip{-2.0, 1.0, 0.0, 3.0};
    CHECK(cluster(s, 0.0, Side::Right) == CompactSet::interval(1.0, 5.0));
    CHECK(cluster(s, 0.0, Side::Left) == CompactSet::interval(1.0, 5.0));
    CHECK(cluster(s, 0.5, Side::Left) == CompactSet::point(eval(s, 0.5)));
  }

  SECTION("sampling near the center supports the band") {
    Expr s = SinRecip{1.0, 1.0, 0.0, 0.0};
    std::vector<double> vals;
    for (int t = 10; t <= 1000000; t += 7) vals.push_back(eval(s, 1.0 / t));
    std::sort(vals.begin(), vals.end());
    CHECK(vals.front() <= -1.0 + 1e-3);
    CHECK(vals.back() >= 1.0 - 1e-3);
    double gap = 0.0;
    for (std::size_t i = 1; i < vals.size(); ++i)
      gap = std::max(gap, vals[i] - vals[i - 1]);
    CHECK(gap <= 1e-3);
    for (double v : vals) {
      REQUIRE(v >= -1.0);
      REQUIRE(v <= 1.0);
    }
  }

  SECTION("the band is reached inside every one sided window") {
    Expr s = SinRecip{1.0, 1.0, 0.0, 0.0};
    for (double delta : {1e-2, 1e-4, 1e-6}) {
      double hi = -2.0, lo = 2.0;
      for (int k = 1; k <= 4000; ++k) {
        double x = delta / (1.0 + 0.01 * k);
        hi = std::max(hi, eval(s, x));
        lo = std::min(lo, eval(s, x));
      }
      CHECK(hi >= 1.0 - 1e-3);
      CHECK(lo <= -1.0 + 1e-3);
    }
  }
}

TEST_CASE("derivative bounds dominate sampled slopes") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Poly p{{coef(gen), coef(gen), coef(gen), coef(gen)}};
    double bound = deriv_bound(Expr{p}, -1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      double x = -0.999 + 1.99 * k / 199.0;
      double h = 1e-6;
      double slope = (eval(Expr{p}, x + h) - eval(Expr{p}, x - h)) / (2.0 * h);
      INFO("trial " << trial << " x " << x);
      REQUIRE(std::abs(slope) <= bound + 1e-3);
    }
  }

  Expr s = SinRecip{1.0, 2.0, 0.0, 0.0};
  double bound = deriv_bound(s, 0.5, 1.0);
  for (int k = 0; k < 200; ++k) {
    double x = 0.501 + 0.498 * k / 199.0;
    double h = 1e-7;
    double slope = (eval(s, x + h) - eval(s, x - h)) / (2.0 * h);
    REQUIRE(std::abs(slope) <= bound + 1e-3);
  }
}

TEST_CASE("value ranges are sound and tight enough") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.05, 1.0);

  SECTION("polynomials") {
    for (int trial = 0; trial < 100; ++trial) {
      Poly p{{coef(gen), coef(gen), coef(gen)}};
      double u = coef(gen), v = u + pos(gen);
      Interval r = value_range(Expr{p}, u, v);
      for (int k = 0; k <= 64; ++k) {
        double x = u + (v - u) * k / 64.0;
        double y = eval(Expr{p}, x);
        INFO("trial " << trial);
        REQUIRE(y >= r.lo - 1e-9);
        REQUIRE(y <= r.hi + 1e-9);
      }
    }
  }

  SECTION("oscillators away from the center are exact") {
    Expr s = SinRecip{1.0, 1.0, 0.0, 0.0};
    Interval r = value_range(s, 1.0 / (2.0 * std::acos(-1.0)), 1.0);
    CHECK(r.hi == 1.0);
    for (int k = 1; k <= 256; ++k) {
      double x = 0.16 + (1.0 - 0.16) * k / 256.0;
      double y = eval(s, x);
      REQUIRE(y >= r.lo - 1e-12);
      REQUIRE(y <= r.hi + 1e-12);
    }
  }

  SECTION("windows spanning the center give the full band") {
    Expr s = SinRecip{0.5, 1.0, 0.2, 1.0};
    Interval r = value_range(s, 0.0, 1.0);
    CHECK(r.lo == 0.5);
    CHECK(r.hi == 1.5);
  }
}

TEST_CASE("phase extreme points hit the crest values") {
  SinRecip s{1.0, 1.0, 0.0, 0.0};

  SECTION("interior centers leave no probes") {
    CHECK(phase_extreme_points(s, -0.5, 0.5).empty());
  }

  SECTION("windows beside the center") {
    std::vector<double> xs = phase_extreme_points(s, 0.001, 0.7);
    REQUIRE_FALSE(xs.empty());
    for (double x : xs) {
      REQUIRE(x > 0.001);
      REQUIRE(x < 0.7);
      REQUIRE(std::abs(std::abs(std::sin(1.0 / x)) - 1.0) <= 1e-9);
    }
  }

  SECTION("center on the window boundary") {
    std::vector<double> xs = phase_extreme_points(s, 0.0, 0.5);
    REQUIRE_FALSE(xs.empty());
    bool hit_hi = false, hit_lo = false;
    for (double x : xs) {
      REQUIRE(x > 0.0);
      REQUIRE(x < 0.5);
      double v = std::sin(1.0 / x);
      if (v > 1.0 - 1e-9) hit_hi = true;
      if (v < -1.0 + 1e-9) hit_lo = true;
    }
    CHECK(hit_hi);
    CHECK(hit_lo);
  }
}

TEST_CASE("difference expressions match pointwise subtraction") {
  SECTION("polynomial pairs") {
    Expr f = Poly{{1.0, -4.0, 2.0}};
    Expr g = Poly{{0.5, 1.0}};
    auto d = diff_expr(f, g);
    REQUIRE(d.has_value());
    for (int k = 0; k <= 32; ++k) {
      double x = -1.0 + 2.0 * k / 32.0;
      REQUIRE(std::abs(eval(*d, x) - (eval(f, x) - eval(g, x))) <= 1e-12);
    }
  }

  SECTION("oscillator pairs sharing frequency and center") {
    Expr f = SinRecip{1.0, 2.0, 0.5, 0.0};
    Expr g = SinRecip{0.25, 2.0, 0.5, -1.0};
    auto d = diff_expr(f, g);
    REQUIRE(d.has_value());
    for (int k = 0; k <= 32; ++k) {
      double x = 0.6 + 0.4 * k / 32.0;
      REQUIRE(std::abs(eval(*d, x) - (eval(f, x) - eval(g, x))) <= 1e-12);
    }
  }

  SECTION("mismatched oscillators have no closed difference") {
    CHECK_FALSE(diff_expr(Expr{SinRecip{1.0, 1.0, 0.0, 0.0}},
                          Expr{SinRecip{1.0, 2.0, 0.0, 0.0}})
                    .has_value());
    CHECK_FALSE(diff_expr(Expr{SinRecip{1.0, 1.0, 0.0, 0.0}}, Expr{Poly{{0.0}}})
                    .has_value());
  }
}

TEST_CASE("constant expression parsing") {
  CHECK(parse_const("3*(2+1)/9") == 1.0);
  CHECK(parse_const("-2") == -2.0);
  CHECK(parse_const("2*pi") == 2.0 * std::acos(-1.0));
  CHECK(parse_const("1/2") == 0.5);
  CHECK(parse_const("2/(11*pi)") == 2.0 / (11.0 * std::acos(-1.0)));

  SECTION("division by zero reports the operator position") {
    try {
      parse_const("1/(2-2)");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.col == 2);
    }
  }

  SECTION("trailing input is rejected") {
    CHECK_THROWS_AS(parse_const("1 2"), ParseError);
    CHECK_THROWS_AS(parse_const(""), ParseError);
    CHECK_THROWS_AS(parse_const("."), ParseError);
  }
}

TEST_CASE("expression parsing and printing round trip") {
  CHECK(parse_expr("poly 1 -4") == Expr{Poly{{1.0, -4.0}}});
  CHECK(parse_expr("poly (2*pi) (1/2)") == Expr{Poly{{2.0 * std::acos(-1.0), 0.5}}});
  CHECK(parse_expr("sinrecip amp=1 k=1 c=0 off=0") == Expr{SinRecip{1.0, 1.0, 0.0, 0.0}});
  CHECK(format_expr(Expr{Poly{{1.0, -4.0}}}) == "poly 1 -4");
  CHECK(format_expr(Expr{SinRecip{1.0, 1.0, 0.0, 0.0}}) ==
        "sinrecip amp=1 k=1 c=0 off=0");

  SECTION("oscillators with zero frequency are rejected") {
    CHECK_THROWS_AS(parse_expr("sinrecip amp=1 k=0 c=0 off=0"), ParseError);
  }

  SECTION("random expressions survive the round trip exactly") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    std::uniform_int_distribution<int> deg(0, 4);
    std::uniform_int_distribution<int> kind(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
      Expr e;
      if (kind(gen) == 0) {
        Poly p;
        int n = deg(gen);
        for (int i = 0; i <= n; ++i) p.coeffs.push_back(coef(gen));
        e = p;
      } else {
        double k = 0.0;
        while (k == 0.0) k = coef(gen);
        e = SinRecip{coef(gen), k, coef(gen), coef(gen)};
      }
      INFO("trial " << trial << ": " << format_expr(e));
      REQUIRE(parse_expr(format_expr(e)) == e);
    }
  }

  SECTION("numbers print and reparse bit for bit") {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
      double x = std::ldexp(u(gen), trial % 40);
      REQUIRE(parse_const(fmt_num(x)) == x);
    }
  }
}

TEST_CASE("set literal parsing") {
  CHECK(parse_set_literal("{-1, 1}") == make_set({{-1.0, -1.0}, {1.0, 1.0}}));
  CHECK(parse_set_literal("[-1, 1]") == CompactSet::interval(-1.0, 1.0));
  CHECK(parse_set_literal("{0} u [2, 3]") == make_set({{0.0, 0.0}, {2.0, 3.0}}));
  CHECK_THROWS_AS(parse_set_literal("[2, 1]"), ParseError);
  CHECK_THROWS_AS(parse_set_literal("{}"), ParseError);
}

TEST_CASE("set formatting round trips") {
  for (unsigned seed = 0; seed < 200; ++seed) {
    CompactSet s = random_compact_set(seed);
    INFO("seed " << seed << ": " << format_set(s));
    REQUIRE(parse_set_literal(format_set(s)) == s);
  }
  CHECK(format_set(make_set({{-1.0, -1.0}, {1.0, 1.0}})) == "{-1, 1}");
  CHECK(format_set(CompactSet::interval(-1.0, 1.0)) == "[-1, 1]");
  CHECK(format_set(make_set({{0.0, 0.0}, {2.0, 3.0}})) == "{0} u [2, 3]");
}

TEST_CASE("certified sup of absolute differences") {
  SECTION("identical expressions short circuit to zero") {
    Bracket z = sup_abs_diff(Expr{Poly{{1.0, 2.0}}}, Expr{Poly{{1.0, 2.0}}}, 0.0, 1.0,
                             1e-9);
    CHECK(z.lo == 0.0);
    CHECK(z.hi == 0.0);
  }

  SECTION("polynomial pair with the sup at an open endpoint") {
    Expr f = Poly{{0.0, 1.0}};
    Expr g = Poly{{0.0, 0.0, 1.0}};
    Bracket b = sup_abs_diff(f, g, 0.0, 2.0, 1e-9);
    CHECK(b.width() <= 1e-9);
    CHECK(b.lo <= 2.0);
    CHECK(b.hi >= 2.0 - 1e-9);
  }

  SECTION("bracket encloses a dense sample maximum") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
      Expr f = Poly{{coef(gen), coef(gen), coef(gen)}};
      Expr g = Poly{{coef(gen), coef(gen)}};
      double tol = 1e-7;
      Bracket b = sup_abs_diff(f, g, -1.0, 1.0, tol);
      double dense = 0.0;
      for (int k = 0; k <= 4000; ++k) {
        double x = -1.0 + 2.0 * k / 4000.0;
        dense = std::max(dense, std::abs(eval(f, x) - eval(g, x)));
      }
      INFO("trial " << trial);
      REQUIRE(b.width() <= tol);
      REQUIRE(dense <= b.hi + 1e-12);
      // The grid can undershoot the sup by slope times half the spacing.
      REQUIRE(b.lo <= dense + 5e-3);
    }
  }

  SECTION("oscillator pair sharing frequency resolves through the center") {
    Expr f = SinRecip{1.0, 1.0, 0.0, 0.0};
    Expr g = SinRecip{0.5, 1.0, 0.0, 0.25};
    Bracket b = sup_abs_diff(f, g, 0.0, 1.0, 1e-9);
    CHECK(b.width() <= 1e-9);
    CHECK(std::abs(b.hi - 0.75) <= 1e-9);
  }

  SECTION("oscillator against a polynomial resolves via crest probes") {
    Expr f = SinRecip{1.0, 1.0, 0.0, 0.0};
    Expr g = Poly{{0.25}};
    Bracket b = sup_abs_diff(f, g, 0.0, 1.0, 1e-6);
    CHECK(b.width() <= 1e-6);
    CHECK(std::abs(b.hi - 1.25) <= 1e-6);
  }

  SECTION("early exit once the threshold is exceeded") {
    Bracket b = sup_abs_diff(Expr{Poly{{0.0}}}, Expr{Poly{{10.0}}}, 0.0, 1.0, 1e-9,
                             1.0);
    CHECK(b.lo > 1.0);
  }

  SECTION("mismatched frequencies at a shared center cannot be certified") {
    CHECK_THROWS_AS(sup_abs_diff(Expr{SinRecip{1.0, 1.0, 0.0, 0.0}},
                                 Expr{SinRecip{1.0, 2.0, 0.0, 0.0}}, 0.0, 1.0, 1e-6),
                    InvariantError);
  }
}
