#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "cevian/angle.hpp"
#include "cevian/geometry.hpp"

namespace cevian {

enum class NotableCenter { Orthocenter, Centroid, Circumcenter, Incenter, NinePoint, Nagel, Gergonne };

inline constexpr std::array<NotableCenter, 7> kAllCenters = {
    NotableCenter::Orthocenter, NotableCenter::Centroid, NotableCenter::Circumcenter, NotableCenter::Incenter,
    NotableCenter::NinePoint,   NotableCenter::Nagel,    NotableCenter::Gergonne};

/// CLI token: orthocenter | centroid | circumcenter | incenter | ninepoint | nagel | gergonne.
std::string_view center_token(NotableCenter c);
std::optional<NotableCenter> parse_center(std::string_view token);

/// Triangle angles at A, B, C in exact degrees.
struct TriangleShape {
  AngleDeg A, B, C;

  /// Throws DegenerateTriangle unless all angles are positive and sum to 180.
  static TriangleShape make(AngleDeg A, AngleDeg B, AngleDeg C);
  static TriangleShape equilateral() { return {60, 60, 60}; }

  bool is_acute() const { return A < AngleDeg(90) && B < AngleDeg(90) && C < AngleDeg(90); }
  std::string to_string() const;

  friend bool operator==(const TriangleShape&, const TriangleShape&) = default;
};

struct TriangleVertices {
  PointXY A, B, C;
};

/// B at the origin, C on the positive x-axis, A above: circumradius 1/2.
TriangleVertices place_triangle(const TriangleShape& shape, Precision p);

/// The center in the coordinates of place_triangle. No interiority check.
PointXY center_point(const TriangleShape& shape, NotableCenter center, Precision p);

/// Angle parameters (∠PBA, ∠PBC, ∠PCB, ∠PCA) with P at the center. Incenter
/// and circumcenter use their closed forms; the rest are measured from
/// coordinates. Throws CenterNotInterior.
CevianAngles center_config(const TriangleShape& shape, NotableCenter center, Precision p);

/// Closed-form exact parameters where they exist (incenter, circumcenter);
/// nullopt for the other centers. Throws CenterNotInterior.
std::optional<CevianConfig> exact_center_config(const TriangleShape& shape, NotableCenter center);

}  // namespace cevian
