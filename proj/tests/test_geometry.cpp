#include <random>

#include "cevian/errors.hpp"
#include "cevian/geometry.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cevian;
using cevian::testing::rel_diff;
using cevian::testing::tol;

namespace {

const Precision k256(256);

CevianConfig cfg(int a, int b, int c, int d) { return CevianConfig::make(a, b, c, d); }

void check_lengths_agree(const FigureLengths& x, const FigureLengths& y, const Real& bound) {
  const auto nx = x.named();
  const auto ny = y.named();
  for (std::size_t i = 0; i < nx.size(); ++i) {
    CAPTURE(nx[i].first);
    CHECK(abs(*nx[i].second - *ny[i].second) < bound);
  }
}

}  // namespace

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(CevianConfig::make(0, 30, 30, 30), DegenerateConfig);
  CHECK_THROWS_AS(CevianConfig::make(-5, 30, 30, 30), DegenerateConfig);
  CHECK_THROWS_AS(CevianConfig::make(45, 45, 45, 45), DegenerateConfig);
  CHECK_THROWS_AS(CevianConfig::make(AngleDeg(1, 10000000), 30, 30, 30), DegenerateConfig);
  CHECK_NOTHROW(CevianConfig::make(AngleDeg(1, 100), 30, 30, 30));
  CHECK_THROWS_AS(build_from_angles(CevianConfig{10, 30, 80, 20}, Precision(32)), PrecisionTooLow);
  CHECK_THROWS_AS(CevianAngles::from_degrees(Real(50L, k256), Real(50L, k256), Real(40L, k256),
                                             Real("39.9999999999", k256)),
                  DegenerateConfig);
}

TEST_CASE("full symmetry gives the medial configuration") {
  const FigureLengths L = build_from_angles(cfg(30, 30, 30, 30), k256);
  const Real eps = tol(-70, k256);
  CHECK(abs(L.bd - L.dc) < eps);
  CHECK(abs(L.af - L.fb) < eps);
  CHECK(abs(L.ae - L.ec) < eps);
  CHECK(abs(L.pa - L.pb) < eps);
  CHECK(abs(L.pb - L.pc) < eps);
}

TEST_CASE("sides follow the extended law of sines") {
  const FigureLengths L = build_from_angles(cfg(10, 30, 80, 20), k256);
  const Real pi = Real::pi(k256);
  const Real eps = tol(-70, k256);
  CHECK(abs(L.bc - sin(pi * 140L / 180L)) < eps);
  CHECK(abs(L.ab - sin(pi * 100L / 180L)) < eps);
  CHECK(abs(L.ca - sin(pi * 40L / 180L)) < eps);
}

TEST_CASE("lengths match the independent coordinate oracle at (10,30,80,20)") {
  // Frozen from tests/oracles/six_incircles_oracle.py (mpmath, 400 bits).
  const char* expected[] = {
      "0.9848077530122080593667430245895230136706", "0.6427876096865393263226434099072634329076",
      "0.6427876096865393263226434099072634329076", "0.2538566529714362463085544212479500877023",
      "0.7309511000407718130581886033415729259684", "0.2232377940978993204410797608456727505638",
      "0.4195498155886400058815636490615906823437", "0.3889309567151030800140889886593133452053",
      "0.2538566529714362463085544212479500877023", "0.3420201433256687330440996146822595807631",
      "0.6736481776669303488517166267693147960004", "0.3420201433256687330440996146822595807631",
      "0.3889309567151030800140889886593133452053", "0.1527036446661393022965667464613704079992",
      "0.135074303743666833705534567411363257503"};
  const FigureLengths L = build_from_angles(cfg(10, 30, 80, 20), k256);
  const auto named = L.named();
  for (std::size_t i = 0; i < named.size(); ++i) {
    CAPTURE(named[i].first);
    CHECK(abs(*named[i].second - Real(expected[i], k256)) < tol(-38, k256));
  }
}

TEST_CASE("angle path agrees with the coordinate path on the 30-60-90 incenter") {
  const TriangleShape shape = TriangleShape::make(90, 30, 60);
  const TriangleVertices v = place_triangle(shape, k256);
  const PointXY I = center_point(shape, NotableCenter::Incenter, k256);
  check_lengths_agree(build_from_angles(cfg(15, 15, 30, 30), k256), build_from_point(v.A, v.B, v.C, I, k256),
                      tol(-45, k256));
}

TEST_CASE("coordinate round trip on a right triangle") {
  const PointXY A{Real(0L, k256), Real(0L, k256)};
  const PointXY B{Real(1L, k256), Real(0L, k256)};
  const PointXY C{Real(0L, k256), Real(1L, k256)};
  const PointXY P{Real("0.25", k256), Real("0.25", k256)};
  const FigureLengths from_point = build_from_point(A, B, C, P, k256);
  const FigureLengths from_angles = build_from_angles(angles_from_point(A, B, C, P, k256));
  check_lengths_agree(from_point, from_angles, tol(-45, k256));
  // Hypotenuse BC is the circumdiameter.
  CHECK(abs(from_point.bc - 1L) < tol(-70, k256));
}

TEST_CASE("points on or outside the boundary are rejected") {
  const PointXY A{Real(0L, k256), Real(1L, k256)};
  const PointXY B{Real(0L, k256), Real(0L, k256)};
  const PointXY C{Real(1L, k256), Real(0L, k256)};
  CHECK_THROWS_AS(build_from_point(A, B, C, PointXY{Real("0.5", k256), Real(0L, k256)}, k256), PointOutside);
  CHECK_THROWS_AS(build_from_point(A, B, C, PointXY{Real(2L, k256), Real(2L, k256)}, k256), PointOutside);
  CHECK_THROWS_AS(build_from_point(A, B, C, B, k256), PointOutside);
  const PointXY flat{Real(2L, k256), Real(0L, k256)};
  CHECK_THROWS_AS(build_from_point(flat, B, C, PointXY{Real("0.5", k256), Real(0L, k256)}, k256),
                  DegenerateTriangle);
}

TEST_CASE("angles measured from coordinates") {
  auto deg = [](const CevianAngles& a) { return a.in_degrees(); };
  const Real eps = tol(-60, k256);

  SUBCASE("equilateral center") {
    const TriangleShape s = TriangleShape::equilateral();
    const TriangleVertices v = place_triangle(s, k256);
    const auto d = deg(angles_from_point(v.A, v.B, v.C, center_point(s, NotableCenter::Centroid, k256), k256));
    for (const Real& x : d) CHECK(abs(x - 30L) < eps);
  }
  SUBCASE("30-60-90 incenter") {
    const TriangleShape s = TriangleShape::make(90, 30, 60);
    const TriangleVertices v = place_triangle(s, k256);
    const auto d = deg(angles_from_point(v.A, v.B, v.C, center_point(s, NotableCenter::Incenter, k256), k256));
    CHECK(abs(d[0] - 15L) < eps);
    CHECK(abs(d[1] - 15L) < eps);
    CHECK(abs(d[2] - 30L) < eps);
    CHECK(abs(d[3] - 30L) < eps);
  }
  SUBCASE("60-70-50 circumcenter") {
    const TriangleShape s = TriangleShape::make(60, 70, 50);
    const TriangleVertices v = place_triangle(s, k256);
    const auto d =
        deg(angles_from_point(v.A, v.B, v.C, center_point(s, NotableCenter::Circumcenter, k256), k256));
    CHECK(abs(d[0] - 40L) < eps);
    CHECK(abs(d[1] - 30L) < eps);
    CHECK(abs(d[2] - 30L) < eps);
    CHECK(abs(d[3] - 20L) < eps);
  }
}

TEST_CASE("subtriangle metrics") {
  SUBCASE("equilateral center: all inradii equal") {
    const FigureMetrics m = metrics(build_from_angles(cfg(30, 30, 30, 30), k256));
    for (int i = 2; i <= 6; ++i) CHECK(abs(m.get(Quantity::Inradius, i) - m.get(Quantity::Inradius, 1)) < tol(-70, k256));
  }

  SUBCASE("30-60-90 incenter reproduces the closed-form radii") {
    const FigureMetrics m = metrics(build_from_angles(cfg(15, 15, 30, 30), k256));
    const Real s2 = sqrt(Real(2L, k256)), s3 = sqrt(Real(3L, k256)), s6 = sqrt(Real(6L, k256));
    const Real closed[6] = {
        (s2 - 1L) * (s3 - 1L) / 4L,
        (-10L - 7L * s2 + 6L * s3 + 4L * s6) / 4L,
        (9L - 7L * s2 - 5L * s3 + 4L * s6) / 4L,
        (-4L - s2 + 2L * s3 + s6) / 8L,
        (-3L * s2 + 2L * s3 + s6) / 24L,
        (1L + s3 - s6) / 4L,
    };
    for (int i = 1; i <= 6; ++i) {
      CAPTURE(i);
      CHECK(rel_diff(m.get(Quantity::Inradius, i), closed[i - 1]) < tol(-45, k256));
    }
  }

  SUBCASE("per-triangle invariants") {
    const FigureMetrics m = metrics(build_from_angles(cfg(10, 30, 80, 20), k256));
    for (const SubTriangle& t : m.triangles) {
      CAPTURE(t.index);
      CHECK(t.inradius == t.area / t.semiperimeter);
      CHECK(rel_diff(t.area, t.heron_area) < tol(-60, k256));
      CHECK(rel_diff(t.circumradius * 4L * t.area, t.sides[0] * t.sides[1] * t.sides[2]) < tol(-60, k256));
    }
    // Area of ABC at circumradius 1/2 is sin A sin B sin C / 2.
    const Real pi = Real::pi(k256);
    const Real whole = sin(pi * 40L / 180L) * sin(pi * 40L / 180L) * sin(pi * 100L / 180L) / 2L;
    CHECK(rel_diff(m.total_area(), whole) < tol(-60, k256));
  }

  SUBCASE("flattened record") {
    const FigureMetrics m = metrics(build_from_angles(cfg(10, 30, 80, 20), k256));
    const auto flat = m.flatten(30);
    REQUIRE(flat.size() == 15 + 24);
    CHECK(flat.front().first == "AB");
    CHECK(flat[15].first == "K1");
    CHECK(flat.back().first == "R6");
    CHECK(Real(flat[17].second, k256) == Real(m.get(Quantity::Inradius, 1).to_string(30), k256));
  }
}

TEST_CASE("universal identities on random interior configurations") {
  std::mt19937_64 rng(2019);
  for (int n = 0; n < 150; ++n) {
    const CevianConfig config = cevian::testing::random_config(rng);
    CAPTURE(config.to_string());
    const FigureLengths L = build_from_angles(config, k256);
    const FigureMetrics m = metrics(L);
    const auto K = m.values(Quantity::Area);
    const Real bound = pow2(-128, k256);

    CHECK(rel_diff(K[0] * K[2] * K[4], K[1] * K[3] * K[5]) < bound);
    const Real inv_odd = 1L / K[0] + 1L / K[2] + 1L / K[4];
    const Real inv_even = 1L / K[1] + 1L / K[3] + 1L / K[5];
    CHECK(rel_diff(inv_odd, inv_even) < bound);
    CHECK(length_residuals(L).max_abs() < bound);

    // Independent coordinate construction of the same figure.
    const auto placed = cevian::testing::place(config, k256);
    const FigureLengths Lp = build_from_point(placed.A, placed.B, placed.C, placed.P, k256);
    check_lengths_agree(L, Lp, tol(-45, k256));
    const auto measured = angles_from_point(placed.A, placed.B, placed.C, placed.P, k256).in_degrees();
    const auto exact = CevianAngles::from(config, k256).in_degrees();
    for (int i = 0; i < 4; ++i) CHECK(abs(measured[i] - exact[i]) < tol(-45, k256));
  }
}

TEST_CASE("doubling the precision shrinks residuals") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 20; ++n) {
    const CevianConfig config = cevian::testing::random_config(rng);
    CAPTURE(config.to_string());
    auto residuals = [&](int bits) {
      const Precision p(bits);
      const FigureLengths L = build_from_angles(config, p);
      const auto K = metrics(L).values(Quantity::Area);
      const LengthResiduals r = length_residuals(L);
      return std::vector<Real>{abs(r.side_ab), abs(r.side_bc), abs(r.side_ca), abs(r.ceva),
                               abs(K[0] * K[2] * K[4] - K[1] * K[3] * K[5])};
    };
    const auto lo = residuals(128);
    const auto hi = residuals(256);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      // A residual that vanishes at the lower precision has nothing to shrink.
      if (lo[i].is_zero()) continue;
      CHECK(hi[i] * pow2(32, k256) <= lo[i]);
    }
  }
}
