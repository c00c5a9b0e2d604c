#include <sstream>

#include "cevian/errors.hpp"
#include "cevian/locus.hpp"
#include "doctest.h"

using namespace cevian;

namespace {

const Precision k256(256);

Real g_at(const TriangleVertices& t, const PointXY& P) {
  return alternating_inradius_sum(metrics(build_from_point(t.A, t.B, t.C, P, k256)));
}

// Reflection across the perpendicular bisector of BC when AB = AC.
PointXY mirror(const PointXY& q, const TriangleVertices& t) { return {t.C.x - q.x, q.y}; }

Real dist(const PointXY& u, const PointXY& v) { return sqrt((u.x - v.x) * (u.x - v.x) + (u.y - v.y) * (u.y - v.y)); }

}  // namespace

TEST_CASE("lattice") {
  const LocusField f = scan(TriangleShape::make(50, 60, 70), 8, k256);
  CHECK(f.nodes.size() == 21);
  for (std::size_t idx = 0; idx < f.nodes.size(); ++idx) {
    const auto& node = f.nodes[idx];
    CHECK(node.i + node.j + node.k == 8);
    CHECK(f.index(node.i, node.j) == static_cast<long>(idx));
    CHECK(node.g.is_finite());
  }
  CHECK(f.index(0, 3) == -1);
  CHECK(f.index(4, 4) == -1);
  CHECK(scan(TriangleShape::equilateral(), 64, k256).nodes.size() == 63 * 62 / 2);
  CHECK_THROWS_AS(scan(TriangleShape::equilateral(), 7, k256), std::invalid_argument);
}

TEST_CASE("equilateral field") {
  const LocusField f = scan(TriangleShape::equilateral(), 12, k256);
  const auto& t = f.vertices;
  // Each median is a zero line: the reflection fixing a vertex swaps the
  // odd and even subtriangles.
  for (const auto& node : f.nodes) {
    if (node.i == node.j || node.j == node.k || node.k == node.i) {
      CHECK(abs(node.g) < pow10(-60, k256));
    } else {
      CHECK(abs(node.g) > pow10(-6, k256));
    }
  }
  const PointXY center{(t.A.x + t.B.x + t.C.x) / 3L, (t.A.y + t.B.y + t.C.y) / 3L};
  CHECK(abs(g_at(t, center)) < pow10(-60, k256));
}

TEST_CASE("value at the centroid matches the equal-area form") {
  // With P at the centroid every K_i = K / 6, so g = (K / 6) * sum of +-1/s_i.
  const TriangleShape shape = TriangleShape::make(50, 60, 70);
  const LocusField f = scan(shape, 9, k256);
  const auto& node = f.nodes[static_cast<std::size_t>(f.index(3, 3))];
  REQUIRE(node.k == 3);

  const FigureMetrics m = metrics(build_from_angles(center_config(shape, NotableCenter::Centroid, k256)));
  const FigureLengths& L = m.lengths;
  const Real s = (L.ab + L.bc + L.ca) / 2L;
  const Real K = sqrt(s * (s - L.ab) * (s - L.bc) * (s - L.ca));
  Real alt(k256);
  for (int i = 1; i <= 6; ++i) {
    const Real inv = 1L / m.get(Quantity::Semiperimeter, i);
    if (i % 2) {
      alt += inv;
    } else {
      alt -= inv;
    }
  }
  const Real expected = K / 6L * alt;
  CHECK(abs(node.g - expected) < pow10(-60, k256));
  CHECK(abs(node.g) > pow10(-6, k256));
}

TEST_CASE("equilateral zero set") {
  const Real tol = pow10(-30, k256);
  const LocusField f = scan(TriangleShape::equilateral(), 16, k256);
  const ZeroSet z = extract_zero_set(f, tol, k256);
  REQUIRE_FALSE(z.empty());
  CHECK(z.unresolved == 0);
  const auto& t = f.vertices;

  std::vector<PointXY> all;
  for (const auto& line : z.polylines) {
    for (std::size_t k = 0; k < line.points.size(); ++k) {
      CHECK(line.residuals[k] < tol);
      CHECK(abs(g_at(t, line.points[k])) < tol);
      all.push_back(line.points[k]);
    }
  }
  // Mapped to itself by the reflection fixing A.
  for (const auto& q : all) {
    const PointXY r = mirror(q, t);
    Real best = dist(r, all.front());
    for (const auto& o : all) best = min(best, dist(r, o));
    CHECK(best < pow10(-25, k256));
  }
  // The center lies within one lattice spacing of the emitted points.
  const PointXY center{(t.A.x + t.B.x + t.C.x) / 3L, (t.A.y + t.B.y + t.C.y) / 3L};
  Real nearest = dist(center, all.front());
  for (const auto& o : all) nearest = min(nearest, dist(center, o));
  CHECK(nearest < f.diameter() / 16L);

  // Medians come out straight.
  for (const auto& line : z.polylines) {
    if (line.points.size() >= 3) CHECK(fit_line(line).deviation_scaled < pow10(-25, k256));
  }
}

TEST_CASE("bisection brackets") {
  // PB = PC exactly on the perpendicular bisector of BC.
  const LocusFunctional f = [](const FigureMetrics& m) { return m.lengths.pb - m.lengths.pc; };
  const int n = 10;
  const LocusField field = scan(TriangleShape::make(50, 60, 70), n, k256, 1, f);
  const ZeroSet z = extract_zero_set(field, pow10(-30, k256), k256, f);
  REQUIRE_FALSE(z.empty());
  const Real half = field.vertices.C.x / 2L;
  const Real edge = field.diameter() / static_cast<long>(n);
  std::size_t count = 0;
  for (const auto& line : z.polylines) {
    for (const auto& q : line.points) {
      CHECK(abs(q.x - half) < pow2(-40, k256) * edge);
      ++count;
    }
  }
  CHECK(count >= 5);
}

TEST_CASE("field without a sign change") {
  const LocusFunctional positive = [](const FigureMetrics& m) { return m.get(Quantity::Inradius, 1); };
  const LocusField field = scan(TriangleShape::make(50, 60, 70), 8, k256, 1, positive);
  const ZeroSet z = extract_zero_set(field, pow10(-30, k256), k256, positive);
  CHECK(z.empty());
  std::ostringstream csv;
  write_polylines_csv(csv, z, 20);
  CHECK(csv.str() == "polyline,x,y,residual\n");
}

TEST_CASE("line fits") {
  const Precision p(128);
  auto pt = [&](long x, long y) { return PointXY{Real(x, p), Real(y, p)}; };
  LocusPolyline collinear{{pt(0, 0), pt(1, 2), pt(3, 6)}, {Real(p), Real(p), Real(p)}, Real(10L, p)};
  const LineFit a = fit_line(collinear);
  CHECK(a.max_deviation < pow10(-35, p));
  CHECK(abs(abs(a.direction.y / a.direction.x) - 2L) < pow10(-35, p));

  LocusPolyline corner{{pt(0, 0), pt(1, 0), pt(0, 1)}, {Real(p), Real(p), Real(p)}, sqrt(Real(2L, p))};
  const LineFit b = fit_line(corner);
  CHECK(b.deviation_scaled > Real("0.2", p));
  CHECK(abs(b.deviation_scaled - Real::ratio(1, 3, p)) < pow10(-35, p));

  LocusPolyline two{{pt(0, 0), pt(1, 0)}, {Real(p), Real(p)}, Real(1L, p)};
  CHECK_THROWS_AS(fit_line(two), TooFewPoints);
}

TEST_CASE("scalene scan is reported and deterministic") {
  const Real tol = pow10(-30, k256);
  const LocusField f1 = scan(TriangleShape::make(50, 60, 70), 24, k256, 1);
  const LocusField f2 = scan(TriangleShape::make(50, 60, 70), 24, k256, 3);
  std::ostringstream c1, c2, p1, p2;
  write_field_csv(c1, f1, 30);
  write_field_csv(c2, f2, 30);
  CHECK(c1.str() == c2.str());
  CHECK(c1.str().starts_with("x,y,g\n"));

  const ZeroSet z1 = extract_zero_set(f1, tol, k256);
  const ZeroSet z2 = extract_zero_set(f2, tol, k256);
  write_polylines_csv(p1, z1, 30);
  write_polylines_csv(p2, z2, 30);
  CHECK(p1.str() == p2.str());
  REQUIRE_FALSE(z1.empty());
  for (const auto& line : z1.polylines) {
    for (const auto& q : line.points) CHECK(abs(g_at(f1.vertices, q)) < tol);
    if (line.points.size() >= 3) {
      MESSAGE("polyline of " << line.points.size() << " points, max deviation "
                             << fit_line(line).deviation_scaled.to_string(4) << " diameters");
    }
  }
}
