#include "cevian/geometry.hpp"

#include <algorithm>

#include "cevian/errors.hpp"

namespace cevian {

namespace {

bool inside_guard(const Real& degrees) { return degrees > Real(kDegreeGuard, degrees.precision()); }

Real cross(const PointXY& o, const PointXY& u, const PointXY& v) {
  return (u.x - o.x) * (v.y - o.y) - (u.y - o.y) * (v.x - o.x);
}

Real dot(const PointXY& o, const PointXY& u, const PointXY& v) {
  return (u.x - o.x) * (v.x - o.x) + (u.y - o.y) * (v.y - o.y);
}

Real distance(const PointXY& u, const PointXY& v) {
  const Real dx = u.x - v.x;
  const Real dy = u.y - v.y;
  return sqrt(dx * dx + dy * dy);
}

/// Unsigned angle at vertex o between rays o->u and o->v.
Real angle_at(const PointXY& o, const PointXY& u, const PointXY& v) {
  return atan2(abs(cross(o, u, v)), dot(o, u, v));
}

PointXY weighted(const Real& wu, const PointXY& u, const Real& wv, const PointXY& v) {
  const Real total = wu + wv;
  return {(wu * u.x + wv * v.x) / total, (wu * u.y + wv * v.y) / total};
}

PointXY at_precision(const PointXY& q, Precision p) {
  Real x(p), y(p);
  mpfr_set(x.get(), q.x.get(), MPFR_RNDN);
  mpfr_set(y.get(), q.y.get(), MPFR_RNDN);
  return {std::move(x), std::move(y)};
}

struct Barycentric {
  Real alpha, beta, gamma;
};

/// Signed-area barycentrics of P; throws DegenerateTriangle for a flat ABC.
Barycentric barycentric(const PointXY& A, const PointXY& B, const PointXY& C, const PointXY& P) {
  const Real area2 = cross(A, B, C);
  const Real scale = max(max(abs(B.x - A.x), abs(B.y - A.y)), max(abs(C.x - A.x), abs(C.y - A.y)));
  const Precision p = area2.precision();
  if (area2.is_zero() || scale.is_zero() || abs(area2) <= pow2(-(p.bits() - 16), p) * scale * scale) {
    throw DegenerateTriangle("triangle ABC has zero area at working precision");
  }
  return {cross(P, B, C) / area2, cross(P, C, A) / area2, cross(P, A, B) / area2};
}

}  // namespace

CevianConfig CevianConfig::make(AngleDeg a, AngleDeg b, AngleDeg c, AngleDeg d) {
  CevianConfig cfg{a, b, c, d};
  if (!cfg.is_valid()) throw DegenerateConfig("degenerate cevian configuration " + cfg.to_string());
  return cfg;
}

bool CevianConfig::is_valid() const {
  // Exact rationals: the guard reduces to plain positivity unless a
  // denominator exceeds 10^6.
  const Precision p(64);
  for (const auto& x : {a, b, c, d, apex()}) {
    if (!x.positive() || !inside_guard(x.to_degrees(p))) return false;
  }
  return true;
}

std::string CevianConfig::to_string() const {
  return "(" + a.to_string() + "," + b.to_string() + "," + c.to_string() + "," + d.to_string() + ")";
}

CevianAngles CevianAngles::from(const CevianConfig& config, Precision p) {
  if (!config.is_valid()) throw DegenerateConfig("degenerate cevian configuration " + config.to_string());
  return {config.a.to_radians(p), config.b.to_radians(p), config.c.to_radians(p), config.d.to_radians(p)};
}

CevianAngles CevianAngles::from_degrees(const Real& a, const Real& b, const Real& c, const Real& d) {
  const Real apex = Real(180L, a.precision()) - a - b - c - d;
  for (const Real* x : {&a, &b, &c, &d, &apex}) {
    if (!x->is_finite() || !inside_guard(*x)) {
      throw DegenerateConfig("cevian angles (" + a.to_string(12) + "," + b.to_string(12) + "," +
                             c.to_string(12) + "," + d.to_string(12) + ") leave the valid simplex");
    }
  }
  return {radians(a), radians(b), radians(c), radians(d)};
}

std::array<Real, 4> CevianAngles::in_degrees() const { return {degrees(a), degrees(b), degrees(c), degrees(d)}; }

std::vector<std::pair<std::string, const Real*>> FigureLengths::named() const {
  return {{"AB", &ab}, {"BC", &bc}, {"CA", &ca}, {"AF", &af}, {"FB", &fb}, {"AE", &ae}, {"EC", &ec}, {"BD", &bd},
          {"DC", &dc}, {"PA", &pa}, {"PB", &pb}, {"PC", &pc}, {"PD", &pd}, {"PE", &pe}, {"PF", &pf}};
}

Real LengthResiduals::max_abs() const {
  return max(max(abs(side_ab), abs(side_ca)), max(abs(side_bc), abs(ceva)));
}

LengthResiduals length_residuals(const FigureLengths& L) {
  return {L.af + L.fb - L.ab, L.ae + L.ec - L.ca, L.bd + L.dc - L.bc,
          (L.bd / L.dc) * (L.ec / L.ae) * (L.af / L.fb) - 1L};
}

char quantity_token(Quantity q) {
  switch (q) {
    case Quantity::Inradius: return 'r';
    case Quantity::Area: return 'K';
    case Quantity::Semiperimeter: return 's';
    case Quantity::Circumradius: return 'R';
  }
  return '?';
}

Quantity parse_quantity(char token) {
  switch (token) {
    case 'r': return Quantity::Inradius;
    case 'K': return Quantity::Area;
    case 's': return Quantity::Semiperimeter;
    case 'R': return Quantity::Circumradius;
    default: throw ParseError(std::string("unknown quantity '") + token + "'");
  }
}

const Real& SubTriangle::value(Quantity q) const {
  switch (q) {
    case Quantity::Inradius: return inradius;
    case Quantity::Area: return area;
    case Quantity::Semiperimeter: return semiperimeter;
    case Quantity::Circumradius: return circumradius;
  }
  return inradius;
}

std::array<Real, 6> FigureMetrics::values(Quantity q) const {
  return {get(q, 1), get(q, 2), get(q, 3), get(q, 4), get(q, 5), get(q, 6)};
}

Real FigureMetrics::total_area() const {
  Real total(lengths.precision());
  for (const auto& t : triangles) total += t.area;
  return total;
}

std::vector<std::pair<std::string, std::string>> FigureMetrics::flatten(int digits) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, value] : lengths.named()) out.emplace_back(name, value->to_string(digits));
  for (const auto& t : triangles) {
    const std::string i = std::to_string(t.index);
    out.emplace_back("K" + i, t.area.to_string(digits));
    out.emplace_back("s" + i, t.semiperimeter.to_string(digits));
    out.emplace_back("r" + i, t.inradius.to_string(digits));
    out.emplace_back("R" + i, t.circumradius.to_string(digits));
  }
  return out;
}

FigureLengths build_from_angles(const CevianConfig& config, Precision p) {
  return build_from_angles(CevianAngles::from(config, p));
}

FigureLengths build_from_angles(const CevianAngles& angles) {
  const auto& [a, b, c, d] = angles;

  // Extended law of sines, circumradius 1/2.
  const Real sum = a + b + c + d;
  const Real sin_sum = sin(sum);
  Real ab = sin(c + d);
  Real ca = sin(a + b);
  Real bc = sin_sum;

  // Law of sines in AFC, BFC, ABE, CBE.
  const Real sin_abc = sin(a + b + c);
  const Real sin_bcd = sin(b + c + d);
  Real af = ca * sin(d) / sin_abc;
  Real fb = sin_sum * sin(c) / sin_abc;
  Real ae = ab * sin(a) / sin_bcd;
  Real ec = sin_sum * sin(b) / sin_bcd;

  // Law of sines in BPC, PEC, PFB.
  const Real sin_bc = sin(b + c);
  Real pb = sin_sum * sin(c) / sin_bc;
  Real pc = sin_sum * sin(b) / sin_bc;
  Real pe = ec * sin(d) / sin_bc;
  Real pf = fb * sin(a) / sin_bc;

  // Ceva.
  const Real ceva_den = fb * ae + af * ec;
  Real bd = fb * ae * bc / ceva_den;
  Real dc = af * ec * bc / ceva_den;

  // Law of cosines in APB, then Menelaus on ADC with transversal BPE.
  Real pa = sqrt(ab * ab + pb * pb - 2L * ab * pb * cos(a));
  Real pd = pa * bd * ec / (bc * ae);

  return {std::move(ab), std::move(bc), std::move(ca), std::move(af), std::move(fb),
          std::move(ae), std::move(ec), std::move(bd), std::move(dc), std::move(pa),
          std::move(pb), std::move(pc), std::move(pd), std::move(pe), std::move(pf),
          angles};
}

CevianAngles angles_from_point(const PointXY& A0, const PointXY& B0, const PointXY& C0, const PointXY& P0,
                               Precision p) {
  const PointXY A = at_precision(A0, p), B = at_precision(B0, p), C = at_precision(C0, p),
                P = at_precision(P0, p);
  const Barycentric bary = barycentric(A, B, C, P);
  if (bary.alpha.sign() <= 0 || bary.beta.sign() <= 0 || bary.gamma.sign() <= 0) {
    throw PointOutside("P is not strictly inside triangle ABC");
  }
  try {
    return CevianAngles::from_degrees(degrees(angle_at(B, A, P)), degrees(angle_at(B, P, C)),
                                      degrees(angle_at(C, B, P)), degrees(angle_at(C, P, A)));
  } catch (const DegenerateConfig&) {
    throw PointOutside("P lies within the guard band of the boundary");
  }
}

FigureLengths build_from_point(const PointXY& A0, const PointXY& B0, const PointXY& C0, const PointXY& P0,
                               Precision p) {
  CevianAngles angles = angles_from_point(A0, B0, C0, P0, p);
  const PointXY A = at_precision(A0, p), B = at_precision(B0, p), C = at_precision(C0, p),
                P = at_precision(P0, p);
  const Barycentric w = barycentric(A, B, C, P);

  const PointXY D = weighted(w.beta, B, w.gamma, C);
  const PointXY E = weighted(w.alpha, A, w.gamma, C);
  const PointXY F = weighted(w.alpha, A, w.beta, B);

  const Real ab = distance(A, B), bc = distance(B, C), ca = distance(C, A);
  const Real area = abs(cross(A, B, C)) / 2L;
  // Circumradius is ab*bc*ca/(4*area); rescale it to 1/2.
  const Real k = 2L * area / (ab * bc * ca);

  return {ab * k,
          bc * k,
          ca * k,
          distance(A, F) * k,
          distance(F, B) * k,
          distance(A, E) * k,
          distance(E, C) * k,
          distance(B, D) * k,
          distance(D, C) * k,
          distance(P, A) * k,
          distance(P, B) * k,
          distance(P, C) * k,
          distance(P, D) * k,
          distance(P, E) * k,
          distance(P, F) * k,
          std::move(angles)};
}

Real heron(const Real& x, const Real& y, const Real& z) {
  std::array<const Real*, 3> s{&x, &y, &z};
  std::sort(s.begin(), s.end(), [](const Real* u, const Real* v) { return *u > *v; });
  const Real& a = *s[0];
  const Real& b = *s[1];
  const Real& c = *s[2];
  const Real prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  if (prod.sign() <= 0) return Real(prod.precision());
  return sqrt(prod) / 4L;
}

FigureMetrics metrics(const FigureLengths& L) {
  const auto& [a, b, c, d] = L.angles;

  auto make = [](int index, const Real& x, const Real& y, const Real& z, Real area) {
    Real semi = (x + y + z) / 2L;
    Real inr = area / semi;
    Real circ = x * y * z / (4L * area);
    Real h = heron(x, y, z);
    return SubTriangle{index, {x, y, z}, std::move(area), std::move(h), std::move(semi), std::move(inr),
                       std::move(circ)};
  };

  // Each area uses the angle at a vertex on ABC or at a cevian foot, where
  // the included angle is a direct function of the parameters.
  return FigureMetrics{
      L,
      {make(1, L.pb, L.bd, L.pd, L.pb * L.bd * sin(b) / 2L),
       make(2, L.pd, L.dc, L.pc, L.pc * L.dc * sin(c) / 2L),
       make(3, L.pc, L.ec, L.pe, L.pc * L.ec * sin(d) / 2L),
       make(4, L.pe, L.ae, L.pa, L.pe * L.ae * sin(b + c + d) / 2L),
       make(5, L.pa, L.af, L.pf, L.af * L.pf * sin(a + b + c) / 2L),
       make(6, L.pf, L.fb, L.pb, L.pb * L.fb * sin(a) / 2L)}};
}

}  // namespace cevian
