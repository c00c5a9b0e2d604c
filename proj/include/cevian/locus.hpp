#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "cevian/centers.hpp"
#include "cevian/geometry.hpp"

namespace cevian {

/// Scalar field over the interior whose zero set is traced. The default is
/// g = (r1 + r3 + r5) - (r2 + r4 + r6).
using LocusFunctional = std::function<Real(const FigureMetrics&)>;
Real alternating_inradius_sum(const FigureMetrics& m);

/// Lattice node (i, j, k) / n in barycentrics over (A, B, C), all >= 1.
struct LocusNode {
  int i = 0, j = 0, k = 0;
  PointXY point;
  Real g;
};

struct LocusField {
  TriangleShape shape;
  int resolution = 0;
  TriangleVertices vertices;
  std::vector<LocusNode> nodes;  // i ascending, then j ascending

  /// Index of node (i, j, n - i - j), or -1 if it is not interior.
  long index(int i, int j) const;
  /// Longest side of the triangle.
  Real diameter() const;
};

/// Evaluates the functional at every interior node via build_from_point,
/// which normalizes to circumradius 1/2. Throws std::invalid_argument for
/// resolution < 8.
LocusField scan(const TriangleShape& shape, int resolution, Precision p, int jobs = 1,
                const LocusFunctional& functional = alternating_inradius_sum);

struct LocusPolyline {
  std::vector<PointXY> points;
  std::vector<Real> residuals;  // |g| at each point
  Real scale;                   // triangle diameter, for fit_line
};

struct ZeroSet {
  std::vector<LocusPolyline> polylines;
  std::size_t unresolved = 0;  // crossings whose refinement never met the tolerance

  /// No sign change and no zero node anywhere in the field.
  bool empty() const { return polylines.empty(); }
};

/// Finds zero crossings on lattice edges with a strict sign change and
/// refines each by bisection until |g| < refine_tolerance and the bracket
/// is below 2^-40 of the edge. Nodes with |g| < refine_tolerance count as
/// zero points. Within each lattice triangle, exactly two zero points make
/// a segment; other counts (saddles, fully vanishing cells) link nothing,
/// so polylines split there. Segments are chained through shared points;
/// chains also split where three or more segments meet.
ZeroSet extract_zero_set(const LocusField& field, const Real& refine_tolerance, Precision p,
                         const LocusFunctional& functional = alternating_inradius_sum);

struct LineFit {
  PointXY centroid;
  PointXY direction;      // unit vector
  Real max_deviation;     // largest orthogonal distance
  Real deviation_scaled;  // max_deviation / polyline scale
};

/// Total least squares line. Throws TooFewPoints below three points.
LineFit fit_line(const LocusPolyline& polyline);

/// "x,y,g" rows, one per node.
void write_field_csv(std::ostream& out, const LocusField& field, int digits);
/// "polyline,x,y,residual" rows.
void write_polylines_csv(std::ostream& out, const ZeroSet& zero_set, int digits);

}  // namespace cevian
