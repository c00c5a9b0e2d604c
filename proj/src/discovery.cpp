#include "cevian/discovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "cevian/errors.hpp"
#include "cevian/parallel.hpp"

namespace cevian {

namespace {

constexpr std::size_t kBlock = 512;

AngleDeg ceil_to(AngleDeg x, AngleDeg step) {
  // smallest k*step >= x
  const Real q = (x.to_degrees(Precision(128)) / step.to_degrees(Precision(128)));
  Real k(Precision(128));
  mpfr_ceil(k.get(), q.get());
  return k.to_int64() * step;
}

std::vector<Real> inradii(const CevianAngles& angles) {
  const auto m = metrics(build_from_angles(angles));
  const auto r = m.values(Quantity::Inradius);
  return {r.begin(), r.end()};
}

}  // namespace

GridSpec GridSpec::full(AngleDeg step) {
  if (!step.positive()) throw std::invalid_argument("grid step must be positive");
  GridSpec g;
  g.step = step;
  for (auto& r : g.ranges) r = {step, 180};
  return g;
}

GridSpec GridSpec::around(const CevianConfig& center, AngleDeg radius, AngleDeg step) {
  if (!step.positive()) throw std::invalid_argument("grid step must be positive");
  GridSpec g;
  g.step = step;
  const auto c = center.as_array();
  for (std::size_t i = 0; i < 4; ++i) g.ranges[i] = {c[i] - radius, c[i] + radius};
  return g;
}

std::vector<CevianConfig> GridSpec::points() const {
  if (!step.positive()) throw std::invalid_argument("grid step must be positive");
  std::array<std::vector<AngleDeg>, 4> values;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto [lo, hi] = ranges[i];
    for (AngleDeg v = std::max(ceil_to(lo, step), step); v <= hi && v < AngleDeg(180); v = v + step) {
      values[i].push_back(v);
    }
  }
  std::vector<CevianConfig> out;
  for (const auto& a : values[0]) {
    for (const auto& b : values[1]) {
      if (a + b >= AngleDeg(180)) break;
      for (const auto& c : values[2]) {
        if (a + b + c >= AngleDeg(180)) break;
        for (const auto& d : values[3]) {
          const CevianConfig q{a, b, c, d};
          if (a + b + c + d >= AngleDeg(180)) break;
          if (q.is_valid()) out.push_back(q);
        }
      }
    }
  }
  return out;
}

bool all_six_involved(Basis basis, std::span<const std::int64_t> coefficients) {
  if (coefficients.size() != basis_length(basis)) return false;
  if (basis != Basis::PairwiseProducts) {
    return std::all_of(coefficients.begin(), coefficients.end(), [](std::int64_t c) { return c != 0; });
  }
  std::array<bool, 6> seen{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j, ++k) {
      if (coefficients[k] != 0) seen[i] = seen[j] = true;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

std::optional<RelationRecord> search_point(const CevianConfig& q, Basis basis, Precision p, std::int64_t max_coeff) {
  const auto first = find_integer_relation(apply_basis(basis, inradii(CevianAngles::from(q, p))), max_coeff, p);
  if (!first || !all_six_involved(basis, first->coefficients)) return std::nullopt;

  const Precision high = p + kRepassExtraBits;
  const auto second = find_integer_relation(apply_basis(basis, inradii(CevianAngles::from(q, high))), max_coeff, high);
  if (!second || second->coefficients != first->coefficients) return std::nullopt;
  return RelationRecord{q, basis, second->coefficients, second->residual.to_string(), high.bits()};
}

SweepSummary sweep(const GridSpec& grid, Basis basis, Precision p, RecordLog* store, const SweepOptions& options) {
  const int need = minimum_relation_bits(basis_length(basis), options.max_coeff);
  if (p.bits() < need) {
    throw PrecisionTooLow("basis '" + std::string(basis_token(basis)) + "' needs at least " + std::to_string(need) +
                          " bits");
  }
  const auto points = grid.points();
  SweepSummary summary;
  summary.points = points.size();
  SweepProgress progress{0, points.size(), 0, 0};

  struct Outcome {
    std::optional<RelationRecord> record;
    bool skipped = false;
  };
  for (std::size_t start = 0; start < points.size(); start += kBlock) {
    const std::size_t count = std::min(kBlock, points.size() - start);
    auto outcomes = parallel_map(count, options.jobs, [&](std::size_t i) {
      try {
        return Outcome{search_point(points[start + i], basis, p, options.max_coeff), false};
      } catch (const DegenerateConfig&) {
        return Outcome{std::nullopt, true};
      } catch (const DegenerateTriangle&) {
        return Outcome{std::nullopt, true};
      }
    });
    std::vector<LogRecord> block;
    for (auto& o : outcomes) {
      if (o.skipped) ++summary.skipped;
      if (o.record) {
        block.emplace_back(*o.record);
        summary.records.push_back(std::move(*o.record));
      }
    }
    if (store) store->append_all(block);
    progress.done += count;
    progress.hits = summary.records.size();
    progress.skipped = summary.skipped;
    if (options.progress) options.progress(progress);
  }
  return summary;
}

namespace {

struct RationalVec {
  // Components as exact fractions over a common positive denominator.
  std::array<std::int64_t, 4> num{};
  std::int64_t den = 1;
  friend auto operator<=>(const RationalVec&, const RationalVec&) = default;
};

RationalVec to_common(const std::array<AngleDeg, 4>& v) {
  std::int64_t den = 1;
  for (const auto& x : v) den = std::lcm(den, x.den());
  RationalVec out;
  out.den = den;
  for (std::size_t i = 0; i < 4; ++i) out.num[i] = v[i].num() * (den / v[i].den());
  return out;
}

std::array<AngleDeg, 4> diff(const CevianConfig& x, const CevianConfig& y) {
  const auto a = x.as_array();
  const auto b = y.as_array();
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

// Canonical form of the line through q with direction v: the primitive
// integer direction with positive leading entry, plus the line's point
// whose first varying component is zero.
std::pair<RationalVec, std::array<AngleDeg, 4>> line_key(const CevianConfig& q, std::array<AngleDeg, 4> v) {
  RationalVec dir = to_common(v);
  std::int64_t g = 0;
  for (auto n : dir.num) g = std::gcd(g, n);
  std::size_t lead = 0;
  while (dir.num[lead] == 0) ++lead;
  if (dir.num[lead] < 0) g = -g;
  for (auto& n : dir.num) n /= g;
  dir.den = 1;

  // q - (q[lead] / v[lead]) v, in exact rationals.
  const auto qa = q.as_array();
  std::array<AngleDeg, 4> base{};
  const AngleDeg ql = qa[lead];
  const AngleDeg vl = v[lead];
  for (std::size_t i = 0; i < 4; ++i) {
    // ql / vl * v[i] = (ql.num * vl.den * v[i].num) / (ql.den * vl.num * v[i].den)
    const std::int64_t n1 = ql.num() * vl.den();
    const std::int64_t d1 = ql.den() * vl.num();
    const AngleDeg t(n1 * v[i].num(), d1 * v[i].den());
    base[i] = qa[i] - t;
  }
  return {dir, base};
}

struct LineId {
  Basis basis;
  std::vector<std::int64_t> coefficients;
  RationalVec dir;
  std::array<std::pair<std::int64_t, std::int64_t>, 4> base;
  friend auto operator<=>(const LineId&, const LineId&) = default;
};

}  // namespace

std::vector<FamilyCandidate> pair_and_extrapolate(std::span<const LogRecord> records) {
  std::vector<RelationRecord> rel;
  for (const auto& r : records) {
    if (const auto* x = std::get_if<RelationRecord>(&r)) rel.push_back(*x);
  }
  std::sort(rel.begin(), rel.end(), [](const RelationRecord& x, const RelationRecord& y) {
    return std::tie(x.quadruple, x.basis) < std::tie(y.quadruple, y.basis);
  });

  std::map<CoefficientKey, std::vector<CevianConfig>> groups;
  for (const auto& r : rel) {
    auto& qs = groups[{r.basis, normalize_coefficients(r.coefficients)}];
    if (qs.empty() || qs.back() != r.quadruple) qs.push_back(r.quadruple);
  }

  std::vector<FamilyCandidate> out;
  std::set<LineId> seen;
  for (const auto& [key, qs] : groups) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      for (std::size_t j = i + 1; j < qs.size(); ++j) {
        const auto a = qs[i].as_array();
        const auto b = qs[j].as_array();
        const CevianConfig q3{2 * b[0] - a[0], 2 * b[1] - a[1], 2 * b[2] - a[2], 2 * b[3] - a[3]};
        if (!q3.is_valid()) continue;
        const auto [dir, base] = line_key(qs[i], diff(qs[j], qs[i]));
        LineId id{key.basis, key.coefficients, dir, {}};
        for (std::size_t k = 0; k < 4; ++k) id.base[k] = {base[k].num(), base[k].den()};
        if (!seen.insert(id).second) continue;
        FamilyCandidate f;
        f.q1 = qs[i];
        f.q2 = qs[j];
        f.q3 = q3;
        f.basis = key.basis;
        f.coefficients = key.coefficients;
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

FamilyCandidate confirm_family(const FamilyCandidate& candidate, Precision high, int sample_count) {
  if (sample_count < 5) throw std::invalid_argument("family confirmation needs at least 5 samples");
  const Relation relation = basis_relation(candidate.basis, candidate.coefficients);

  // Q(t) = Q1 + t v, each component and the apex kept >= 1 degree.
  const auto q1 = candidate.q1.as_array();
  const auto v = diff(candidate.q2, candidate.q1);
  Real lo(-2L, high);
  Real hi(3L, high);
  auto clip = [&](const Real& base, const Real& slope) {
    // base + t * slope >= 1
    if (slope.is_zero()) {
      if (base < 1L) hi = lo - 1L;
      return;
    }
    const Real t = (1L - base) / slope;
    if (slope.sign() > 0) {
      lo = max(lo, t);
    } else {
      hi = min(hi, t);
    }
  };
  Real apex_base(180L, high);
  Real apex_slope(high);
  for (std::size_t i = 0; i < 4; ++i) {
    const Real base = q1[i].to_degrees(high);
    const Real slope = v[i].to_degrees(high);
    clip(base, slope);
    apex_base -= base;
    apex_slope -= slope;
  }
  clip(apex_base, apex_slope);

  FamilyCandidate out = candidate;
  out.samples.clear();
  out.degenerate_samples = 0;
  out.precision_bits = high.bits();
  if (!(lo < hi)) throw DegenerateConfig("family line " + candidate.q1.to_string() + " -> " +
                                         candidate.q2.to_string() + " has no valid interior");

  const Real offset = 1L / Real::pi(high);
  const Real tolerance = pow10(-high.tolerance_digits(), high);
  bool all_pass = true;
  for (int k = 0; k < sample_count; ++k) {
    const Real t = lo + (hi - lo) * (offset + static_cast<long>(k)) / static_cast<long>(sample_count);
    std::array<Real, 4> deg{Real(high), Real(high), Real(high), Real(high)};
    for (std::size_t i = 0; i < 4; ++i) deg[i] = q1[i].to_degrees(high) + t * v[i].to_degrees(high);
    try {
      const auto angles = CevianAngles::from_degrees(deg[0], deg[1], deg[2], deg[3]);
      const auto res = evaluate(relation, metrics(build_from_angles(angles)));
      const bool pass = res.relative < tolerance;
      all_pass = all_pass && pass;
      out.samples.push_back({t.to_string(), res.relative.to_string(), pass});
    } catch (const DegenerateConfig&) {
      ++out.degenerate_samples;
    } catch (const DegenerateTriangle&) {
      ++out.degenerate_samples;
    }
  }
  if (out.samples.empty()) throw DegenerateConfig("every confirmation sample was degenerate");
  out.status = all_pass ? FamilyStatus::Confirmed : FamilyStatus::Refuted;
  return out;
}

std::vector<FamilyCandidate> confirm_families(std::span<const FamilyCandidate> candidates, Precision high,
                                              int sample_count, int jobs) {
  return parallel_map(candidates.size(), jobs,
                      [&](std::size_t i) { return confirm_family(candidates[i], high, sample_count); });
}

}  // namespace cevian
