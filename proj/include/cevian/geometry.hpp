#pragma once

// Cevian figure construction.
//
// Three cevians AD, BE, CF through an interior point P cut triangle ABC into
// six subtriangles, numbered counterclockwise starting from the one bounded
// by AP, BP and BC:
//
//   1 = PBD   2 = PDC   3 = PCE   4 = PEA   5 = PAF   6 = PFB
//
// The figure is fixed up to similarity by the four angles
//   a = ∠PBA, b = ∠PBC, c = ∠PCB, d = ∠PCA
// and all lengths are reported at the scale where triangle ABC has
// circumradius 1/2, so each side equals the sine of its opposite angle.

#include <array>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "cevian/angle.hpp"
#include "cevian/real.hpp"

namespace cevian {

/// Configs closer than this many degrees to the boundary of the valid
/// simplex are rejected.
inline constexpr double kDegreeGuard = 1e-6;

/// Exact angle parameters (degrees) of the figure.
struct CevianConfig {
  AngleDeg a, b, c, d;

  /// Validates positivity and a+b+c+d < 180 (with the guard band);
  /// throws DegenerateConfig otherwise.
  static CevianConfig make(AngleDeg a, AngleDeg b, AngleDeg c, AngleDeg d);

  bool is_valid() const;
  AngleDeg apex() const { return AngleDeg(180) - a - b - c - d; }
  std::array<AngleDeg, 4> as_array() const { return {a, b, c, d}; }
  std::string to_string() const;

  friend bool operator==(const CevianConfig&, const CevianConfig&) = default;
  friend std::strong_ordering operator<=>(const CevianConfig&, const CevianConfig&) = default;
};

/// The same four angles as Reals, in radians. Used where the parameters are
/// not grid points (measured from coordinates, sampled off-grid).
struct CevianAngles {
  Real a, b, c, d;

  static CevianAngles from(const CevianConfig& config, Precision p);
  /// Throws DegenerateConfig when outside the guarded simplex.
  static CevianAngles from_degrees(const Real& a, const Real& b, const Real& c, const Real& d);

  Precision precision() const { return a.precision(); }
  std::array<Real, 4> in_degrees() const;
};

struct PointXY {
  Real x, y;
};

/// The fifteen segment lengths at circumradius 1/2, plus the angle
/// parameters they were built from.
struct FigureLengths {
  Real ab, bc, ca;
  Real af, fb, ae, ec, bd, dc;
  Real pa, pb, pc, pd, pe, pf;
  CevianAngles angles;

  Precision precision() const { return ab.precision(); }

  /// (name, value) pairs in a fixed order: AB BC CA AF FB AE EC BD DC PA PB
  /// PC PD PE PF.
  std::vector<std::pair<std::string, const Real*>> named() const;
};

/// Residuals of the identities every FigureLengths must satisfy.
struct LengthResiduals {
  Real side_ab;  // AF + FB - AB
  Real side_ca;  // AE + EC - CA
  Real side_bc;  // BD + DC - BC
  Real ceva;     // (BD/DC)(CE/EA)(AF/FB) - 1
  Real max_abs() const;
};

LengthResiduals length_residuals(const FigureLengths& lengths);

enum class Quantity { Inradius, Area, Semiperimeter, Circumradius };

/// Single-letter token used in exports: r, K, s, R.
char quantity_token(Quantity q);
Quantity parse_quantity(char token);

struct SubTriangle {
  int index = 0;
  std::array<Real, 3> sides;
  Real area;          // two sides and the included angle
  Real heron_area;    // from the three sides alone
  Real semiperimeter;
  Real inradius;      // area / semiperimeter
  Real circumradius;  // product of sides / (4 * area)

  const Real& value(Quantity q) const;
};

struct FigureMetrics {
  FigureLengths lengths;
  std::array<SubTriangle, 6> triangles;

  /// Quantity of subtriangle i (1-based).
  const Real& get(Quantity q, int i) const { return triangles.at(static_cast<std::size_t>(i - 1)).value(q); }
  std::array<Real, 6> values(Quantity q) const;
  Real total_area() const;

  /// Flat (name, decimal string) record: the 15 lengths, then Ki si ri Ri.
  std::vector<std::pair<std::string, std::string>> flatten(int digits) const;
};

/// Law-of-sines construction from the angle parameters.
FigureLengths build_from_angles(const CevianConfig& config, Precision p);
FigureLengths build_from_angles(const CevianAngles& angles);

/// Coordinate construction: cevian feet from barycentrics, Euclidean
/// distances, then a rescale to circumradius 1/2. Throws DegenerateTriangle
/// or PointOutside.
FigureLengths build_from_point(const PointXY& A, const PointXY& B, const PointXY& C, const PointXY& P,
                               Precision p);

/// Measures ∠PBA, ∠PBC, ∠PCB, ∠PCA. Throws PointOutside unless P is strictly
/// inside (outside the guard band).
CevianAngles angles_from_point(const PointXY& A, const PointXY& B, const PointXY& C, const PointXY& P,
                               Precision p);

FigureMetrics metrics(const FigureLengths& lengths);

/// Area from three side lengths (Kahan's ordering of Heron's formula).
Real heron(const Real& x, const Real& y, const Real& z);

}  // namespace cevian
