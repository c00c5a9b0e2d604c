#include "cevian/centers.hpp"

#include "cevian/errors.hpp"

namespace cevian {

namespace {

PointXY combine(const TriangleVertices& v, const Real& wa, const Real& wb, const Real& wc) {
  const Real total = wa + wb + wc;
  return {(wa * v.A.x + wb * v.B.x + wc * v.C.x) / total, (wa * v.A.y + wb * v.B.y + wc * v.C.y) / total};
}

PointXY circumcenter_of(const TriangleVertices& v) {
  const auto& [A, B, C] = v;
  const Real d = 2L * (A.x * (B.y - C.y) + B.x * (C.y - A.y) + C.x * (A.y - B.y));
  const Real a2 = A.x * A.x + A.y * A.y;
  const Real b2 = B.x * B.x + B.y * B.y;
  const Real c2 = C.x * C.x + C.y * C.y;
  return {(a2 * (B.y - C.y) + b2 * (C.y - A.y) + c2 * (A.y - B.y)) / d,
          (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d};
}

PointXY orthocenter_of(const TriangleVertices& v) {
  const PointXY O = circumcenter_of(v);
  return {v.A.x + v.B.x + v.C.x - 2L * O.x, v.A.y + v.B.y + v.C.y - 2L * O.y};
}

}  // namespace

std::string_view center_token(NotableCenter c) {
  switch (c) {
    case NotableCenter::Orthocenter: return "orthocenter";
    case NotableCenter::Centroid: return "centroid";
    case NotableCenter::Circumcenter: return "circumcenter";
    case NotableCenter::Incenter: return "incenter";
    case NotableCenter::NinePoint: return "ninepoint";
    case NotableCenter::Nagel: return "nagel";
    case NotableCenter::Gergonne: return "gergonne";
  }
  return "?";
}

std::optional<NotableCenter> parse_center(std::string_view token) {
  for (NotableCenter c : kAllCenters) {
    if (center_token(c) == token) return c;
  }
  return std::nullopt;
}

TriangleShape TriangleShape::make(AngleDeg A, AngleDeg B, AngleDeg C) {
  TriangleShape s{A, B, C};
  if (!A.positive() || !B.positive() || !C.positive() || A + B + C != AngleDeg(180)) {
    throw DegenerateTriangle("triangle angles " + s.to_string() + " must be positive and sum to 180");
  }
  return s;
}

std::string TriangleShape::to_string() const {
  return A.to_string() + "-" + B.to_string() + "-" + C.to_string();
}

TriangleVertices place_triangle(const TriangleShape& shape, Precision p) {
  const Real side_ca = sin(shape.C.to_radians(p));  // AB, opposite C
  const Real angle_b = shape.B.to_radians(p);
  return {{side_ca * cos(angle_b), side_ca * sin(angle_b)},
          {Real(p), Real(p)},
          {sin(shape.A.to_radians(p)), Real(p)}};
}

PointXY center_point(const TriangleShape& shape, NotableCenter center, Precision p) {
  const TriangleVertices v = place_triangle(shape, p);
  // Side lengths opposite A, B, C.
  const Real a = sin(shape.A.to_radians(p));
  const Real b = sin(shape.B.to_radians(p));
  const Real c = sin(shape.C.to_radians(p));
  const Real s = (a + b + c) / 2L;
  switch (center) {
    case NotableCenter::Centroid: {
      const Real one(1L, p);
      return combine(v, one, one, one);
    }
    case NotableCenter::Incenter: return combine(v, a, b, c);
    case NotableCenter::Circumcenter: return circumcenter_of(v);
    case NotableCenter::Orthocenter: return orthocenter_of(v);
    case NotableCenter::NinePoint: {
      const PointXY O = circumcenter_of(v);
      const PointXY H = orthocenter_of(v);
      return {(O.x + H.x) / 2L, (O.y + H.y) / 2L};
    }
    case NotableCenter::Nagel: return combine(v, s - a, s - b, s - c);
    case NotableCenter::Gergonne: {
      const Real one(1L, p);
      return combine(v, one / (s - a), one / (s - b), one / (s - c));
    }
  }
  throw Error("unknown center");
}

std::optional<CevianConfig> exact_center_config(const TriangleShape& shape, NotableCenter center) {
  const std::string where = std::string(center_token(center)) + " of " + shape.to_string();
  switch (center) {
    case NotableCenter::Incenter:
      return CevianConfig::make(shape.B / 2, shape.B / 2, shape.C / 2, shape.C / 2);
    case NotableCenter::Circumcenter: {
      if (!shape.is_acute()) throw CenterNotInterior(where + " is not strictly inside");
      const AngleDeg right(90);
      return CevianConfig::make(right - shape.C, right - shape.A, right - shape.A, right - shape.B);
    }
    default: return std::nullopt;
  }
}

CevianAngles center_config(const TriangleShape& shape, NotableCenter center, Precision p) {
  if (auto exact = exact_center_config(shape, center)) return CevianAngles::from(*exact, p);

  const std::string where = std::string(center_token(center)) + " of " + shape.to_string();
  const TriangleVertices v = place_triangle(shape, p);
  const PointXY P = center_point(shape, center, p);
  CevianAngles angles = [&] {
    try {
      return angles_from_point(v.A, v.B, v.C, P, p);
    } catch (const PointOutside&) {
      throw CenterNotInterior(where + " is not strictly inside");
    }
  }();

  if (center == NotableCenter::Nagel || center == NotableCenter::Gergonne) {
    const LengthResiduals res = length_residuals(build_from_point(v.A, v.B, v.C, P, p));
    if (abs(res.ceva) > pow10(-p.tolerance_digits(), p)) {
      throw Error("cevians through the " + where + " fail Ceva's condition: " + res.ceva.to_string(6));
    }
  }
  return angles;
}

}  // namespace cevian
