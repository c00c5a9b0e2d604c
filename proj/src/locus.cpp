#include "cevian/locus.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "cevian/errors.hpp"
#include "cevian/parallel.hpp"

namespace cevian {

Real alternating_inradius_sum(const FigureMetrics& m) {
  const auto r = m.values(Quantity::Inradius);
  return (r[0] + r[2] + r[4]) - (r[1] + r[3] + r[5]);
}

long LocusField::index(int i, int j) const {
  const int n = resolution;
  if (i < 1 || j < 1 || n - i - j < 1) return -1;
  // Rows i = 1..i-1 hold n - 1 - i' nodes each.
  long before = 0;
  for (int r = 1; r < i; ++r) before += n - 1 - r;
  return before + (j - 1);
}

Real LocusField::diameter() const {
  auto dist = [](const PointXY& u, const PointXY& v) {
    return sqrt((u.x - v.x) * (u.x - v.x) + (u.y - v.y) * (u.y - v.y));
  };
  const auto& [A, B, C] = vertices;
  return max(dist(A, B), max(dist(B, C), dist(C, A)));
}

namespace {

PointXY lerp(const PointXY& u, const PointXY& v, const Real& t) {
  return {u.x + (v.x - u.x) * t, u.y + (v.y - u.y) * t};
}

Real evaluate_at(const TriangleVertices& tri, const PointXY& P, Precision p, const LocusFunctional& f) {
  return f(metrics(build_from_point(tri.A, tri.B, tri.C, P, p)));
}

}  // namespace

LocusField scan(const TriangleShape& shape, int resolution, Precision p, int jobs, const LocusFunctional& functional) {
  if (resolution < 8) throw std::invalid_argument("locus resolution must be at least 8");
  LocusField field{shape, resolution, place_triangle(shape, p), {}};
  const auto& [A, B, C] = field.vertices;
  for (int i = 1; i <= resolution - 2; ++i) {
    for (int j = 1; i + j <= resolution - 1; ++j) {
      const int k = resolution - i - j;
      const long n = resolution;
      PointXY P{(A.x * static_cast<long>(i) + B.x * static_cast<long>(j) + C.x * static_cast<long>(k)) / n,
                (A.y * static_cast<long>(i) + B.y * static_cast<long>(j) + C.y * static_cast<long>(k)) / n};
      field.nodes.push_back({i, j, k, std::move(P), Real(p)});
    }
  }
  auto values = parallel_map(field.nodes.size(), jobs, [&](std::size_t idx) {
    return evaluate_at(field.vertices, field.nodes[idx].point, p, functional);
  });
  for (std::size_t idx = 0; idx < values.size(); ++idx) field.nodes[idx].g = std::move(values[idx]);
  return field;
}

ZeroSet extract_zero_set(const LocusField& field, const Real& refine_tolerance, Precision p,
                         const LocusFunctional& functional) {
  const int n = field.resolution;
  const auto& nodes = field.nodes;
  auto is_zero = [&](long v) { return abs(nodes[static_cast<std::size_t>(v)].g) < refine_tolerance; };
  const Real edge_bracket = pow2(-40, p);

  // Zero points are keyed by node (a, a) or edge (a, b) with a < b.
  using Key = std::pair<long, long>;
  struct ZeroPoint {
    PointXY point;
    Real residual;
    bool ok = true;
  };
  std::map<Key, ZeroPoint> zeros;
  std::size_t unresolved = 0;

  auto refine = [&](long a, long b) -> ZeroPoint {
    const LocusNode& u = nodes[static_cast<std::size_t>(a)];
    const LocusNode& v = nodes[static_cast<std::size_t>(b)];
    Real lo(0L, p);
    Real hi(1L, p);
    const int lo_sign = u.g.sign();
    const int max_steps = p.bits() + 64;
    for (int step = 0; step < max_steps; ++step) {
      const Real mid = (lo + hi) / 2L;
      PointXY P = lerp(u.point, v.point, mid);
      Real g = evaluate_at(field.vertices, P, p, functional);
      if (abs(g) < refine_tolerance && hi - lo < edge_bracket) return {std::move(P), abs(g), true};
      if (g.sign() == lo_sign) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return {PointXY{Real(p), Real(p)}, Real(p), false};
  };

  auto zero_of_edge = [&](long a, long b) -> std::optional<Key> {
    if (a > b) std::swap(a, b);
    if (is_zero(a) || is_zero(b)) return std::nullopt;
    if (nodes[static_cast<std::size_t>(a)].g.sign() * nodes[static_cast<std::size_t>(b)].g.sign() >= 0) {
      return std::nullopt;
    }
    const Key key{a, b};
    if (!zeros.contains(key)) {
      ZeroPoint z = refine(a, b);
      if (!z.ok) ++unresolved;
      zeros.emplace(key, std::move(z));
    }
    if (!zeros.at(key).ok) return std::nullopt;
    return key;
  };
  auto zero_of_node = [&](long a) -> std::optional<Key> {
    if (!is_zero(a)) return std::nullopt;
    const Key key{a, a};
    if (!zeros.contains(key)) {
      const auto& node = nodes[static_cast<std::size_t>(a)];
      zeros.emplace(key, ZeroPoint{node.point, abs(node.g), true});
    }
    return key;
  };

  // Marching triangles over up cells (i,j),(i+1,j),(i,j+1) and down cells
  // (i+1,j),(i,j+1),(i+1,j+1).
  std::map<Key, std::vector<Key>> adjacency;
  auto cell = [&](long a, long b, long c) {
    if (a < 0 || b < 0 || c < 0) return;
    std::vector<Key> pts;
    for (long v : {a, b, c}) {
      if (auto z = zero_of_node(v)) pts.push_back(*z);
    }
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
      if (auto z = zero_of_edge(x, y)) pts.push_back(*z);
    }
    for (const Key& k : pts) adjacency[k];
    if (pts.size() == 2) {
      adjacency[pts[0]].push_back(pts[1]);
      adjacency[pts[1]].push_back(pts[0]);
    }
  };
  for (int i = 1; i < n; ++i) {
    for (int j = 1; i + j < n; ++j) {
      cell(field.index(i, j), field.index(i + 1, j), field.index(i, j + 1));
      cell(field.index(i + 1, j), field.index(i, j + 1), field.index(i + 1, j + 1));
    }
  }
  // A segment shared by two cells (along a zero edge) is listed twice.
  for (auto& [k, nb] : adjacency) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  ZeroSet out;
  out.unresolved = unresolved;
  const Real scale = field.diameter();
  std::set<std::pair<Key, Key>> used;
  auto take = [&](const Key& x, const Key& y) { return used.insert(std::minmax(x, y)).second; };
  auto emit = [&](const std::vector<Key>& chain) {
    LocusPolyline line{{}, {}, scale};
    for (const Key& k : chain) {
      line.points.push_back(zeros.at(k).point);
      line.residuals.push_back(zeros.at(k).residual);
    }
    out.polylines.push_back(std::move(line));
  };
  auto walk = [&](Key start, Key next) {
    std::vector<Key> chain{start, next};
    Key prev = start;
    Key cur = next;
    while (adjacency.at(cur).size() == 2) {
      const auto& nb = adjacency.at(cur);
      const Key step = nb[0] == prev ? nb[1] : nb[0];
      if (!take(cur, step)) break;
      chain.push_back(step);
      prev = cur;
      cur = step;
    }
    return chain;
  };

  // Open chains start at endpoints and junctions, then closed loops.
  for (const auto& [k, nb] : adjacency) {
    if (nb.size() == 2) continue;
    if (nb.empty()) emit({k});
    for (const Key& m : nb) {
      if (take(k, m)) emit(walk(k, m));
    }
  }
  for (const auto& [k, nb] : adjacency) {
    for (const Key& m : nb) {
      if (take(k, m)) emit(walk(k, m));
    }
  }
  return out;
}

LineFit fit_line(const LocusPolyline& polyline) {
  const auto& pts = polyline.points;
  if (pts.size() < 3) throw TooFewPoints("line fit needs at least 3 points");
  const Precision p = pts.front().x.precision();
  const long count = static_cast<long>(pts.size());
  Real cx(p), cy(p);
  for (const auto& q : pts) {
    cx += q.x;
    cy += q.y;
  }
  cx /= count;
  cy /= count;
  Real sxx(p), syy(p), sxy(p);
  for (const auto& q : pts) {
    const Real dx = q.x - cx;
    const Real dy = q.y - cy;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  // Principal axis of the 2x2 scatter matrix.
  const Real theta = atan2(2L * sxy, sxx - syy) / 2L;
  PointXY dir{cos(theta), sin(theta)};
  Real worst(p);
  for (const auto& q : pts) {
    worst = max(worst, abs((q.x - cx) * dir.y - (q.y - cy) * dir.x));
  }
  Real scaled = polyline.scale.is_zero() ? Real(p) : worst / polyline.scale;
  return {PointXY{std::move(cx), std::move(cy)}, std::move(dir), std::move(worst), std::move(scaled)};
}

void write_field_csv(std::ostream& out, const LocusField& field, int digits) {
  out << "x,y,g\n";
  for (const auto& node : field.nodes) {
    out << node.point.x.to_string(digits) << ',' << node.point.y.to_string(digits) << ','
        << node.g.to_string(digits) << '\n';
  }
}

void write_polylines_csv(std::ostream& out, const ZeroSet& zero_set, int digits) {
  out << "polyline,x,y,residual\n";
  for (std::size_t id = 0; id < zero_set.polylines.size(); ++id) {
    const auto& line = zero_set.polylines[id];
    for (std::size_t k = 0; k < line.points.size(); ++k) {
      out << id << ',' << line.points[k].x.to_string(digits) << ',' << line.points[k].y.to_string(digits) << ','
          << line.residuals[k].to_string(6) << '\n';
    }
  }
}

}  // namespace cevian
