#include "cevian/catalog.hpp"

#include <functional>
#include <initializer_list>
#include <utility>

#include "cevian/errors.hpp"
#include "cevian/parallel.hpp"

namespace cevian {

namespace {

using Factor = std::pair<int, int>;  // (subtriangle index 1..6, exponent)

Term term(std::int64_t coefficient, std::initializer_list<Factor> factors) {
  Term t{coefficient, {}};
  for (const auto& [index, exponent] : factors) t.exponents[static_cast<std::size_t>(index - 1)] += exponent;
  return t;
}

/// sum_i coefficient_i * x_i^power over the listed subtriangles.
Relation powers(Quantity q, int power, std::initializer_list<std::pair<int, std::int64_t>> index_coeff) {
  std::vector<Term> terms;
  for (const auto& [index, c] : index_coeff) terms.push_back(term(c, {{index, power}}));
  return Relation::make(q, std::move(terms));
}

/// x_odd1 x_odd2 x_odd3 - x_even1 x_even2 x_even3.
Relation alternating_product(Quantity q) {
  return Relation::make(q, {term(1, {{1, 1}, {3, 1}, {5, 1}}), term(-1, {{2, 1}, {4, 1}, {6, 1}})});
}

Relation reciprocal_balance(Quantity q, std::array<int, 3> lhs, std::array<int, 3> rhs) {
  return powers(q, -1, {{lhs[0], 1}, {lhs[1], 1}, {lhs[2], 1}, {rhs[0], -1}, {rhs[1], -1}, {rhs[2], -1}});
}

std::vector<CatalogEntry> build_catalog() {
  using Q = Quantity;
  using C = NotableCenter;
  const TriangleShape right_30_60 = TriangleShape::make(90, 30, 60);
  std::vector<CatalogEntry> out;

  out.push_back({"thm3.1", alternating_product(Q::Inradius), Predicate::center_of(C::Orthocenter, ShapeRule::Acute),
                 "orthocenter: alternate inradius products agree", {}});

  for (int i = 1; i <= 5; ++i) {
    out.push_back({"lem4.1-" + std::to_string(i) + std::to_string(i + 1),
                   powers(Q::Area, 1, {{i, 1}, {i + 1, -1}}), Predicate::center_of(C::Centroid),
                   "centroid: the six subtriangles have equal area", {}});
  }
  out.push_back({"lem4.2", powers(Q::Semiperimeter, 1, {{1, 1}, {3, 1}, {5, 1}, {2, -1}, {4, -1}, {6, -1}}),
                 Predicate::center_of(C::Centroid), "centroid: alternate semiperimeter sums agree", {}});
  out.push_back({"thm4.1", reciprocal_balance(Q::Inradius, {1, 3, 5}, {2, 4, 6}), Predicate::center_of(C::Centroid),
                 "centroid: alternate reciprocal inradius sums agree", {}});
  out.push_back({"thm4.2", alternating_product(Q::Circumradius), Predicate::center_of(C::Centroid),
                 "centroid: alternate circumradius products agree", {}});

  out.push_back({"thm5.1", reciprocal_balance(Q::Inradius, {1, 3, 5}, {2, 4, 6}),
                 Predicate::center_of(C::Circumcenter, ShapeRule::Acute),
                 "circumcenter: alternate reciprocal inradius sums agree", {}});
  out.push_back({"thm5.2", powers(Q::Circumradius, 1, {{1, 1}, {2, -1}}),
                 Predicate::center_of(C::Circumcenter, ShapeRule::Acute),
                 "circumcenter: subtriangles 1 and 2 have equal circumradii",
                 {{"R3 = R4", powers(Q::Circumradius, 1, {{3, 1}, {4, -1}})},
                  {"R5 = R6", powers(Q::Circumradius, 1, {{5, 1}, {6, -1}})}}});

  out.push_back({"thm6.1", reciprocal_balance(Q::Inradius, {1, 4, 5}, {2, 3, 6}),
                 Predicate::center_with_angle_b(C::Incenter, 60), "incenter with angle B = 60", {}});
  out.push_back({"thm6.2",
                 Relation::make(Q::Inradius, {term(1, {{1, 1}, {2, 1}, {3, 1}}), term(1, {{3, 1}, {4, 1}, {5, 1}}),
                                              term(1, {{3, 1}, {4, 1}, {6, 1}}), term(-1, {{1, 1}, {3, 1}, {4, 1}}),
                                              term(-1, {{2, 1}, {3, 1}, {4, 1}}), term(-1, {{4, 1}, {5, 1}, {6, 1}})}),
                 Predicate::center_with_angle_b(C::Incenter, 120), "incenter with angle B = 120, product form", {}});
  out.push_back({"thm6.2-quotient",
                 Relation::make(Q::Inradius, {term(1, {{1, 1}}), term(1, {{2, 1}}), term(1, {{5, 1}, {6, 1}, {3, -1}}),
                                              term(-1, {{5, 1}}), term(-1, {{6, 1}}), term(-1, {{1, 1}, {2, 1}, {4, -1}})}),
                 Predicate::center_with_angle_b(C::Incenter, 120), "incenter with angle B = 120, quotient form", {}});

  const Predicate right_incenter = Predicate::center_of_shape(C::Incenter, right_30_60);
  out.push_back({"thm6.3-quartic",
                 powers(Q::Inradius, -4, {{1, 2}, {3, 8}, {4, 6}, {5, 5}, {2, -14}, {6, -20}}), right_incenter,
                 "30-60-90 incenter, reciprocal fourth powers", {}});
  out.push_back({"thm6.3-square", powers(Q::Inradius, -2, {{1, 3}, {2, 3}, {4, 3}, {3, -3}, {5, -2}, {6, -3}}),
                 right_incenter, "30-60-90 incenter, reciprocal squares", {}});
  out.push_back({"thm6.3-reciprocal",
                 powers(Q::Inradius, -1, {{1, 2}, {2, 2}, {5, 1}, {6, 1}, {3, -3}, {4, -2}}), right_incenter,
                 "30-60-90 incenter, reciprocals", {}});
  out.push_back({"thm6.3-linear", powers(Q::Inradius, 1, {{1, 3}, {3, 5}, {4, 55}, {6, 22}, {2, -4}, {5, -75}}),
                 right_incenter, "30-60-90 incenter, linear", {}});
  out.push_back({"thm6.3-product",
                 Relation::make(Q::Inradius, {term(2, {{1, 1}, {3, 1}}), term(3, {{2, 1}, {4, 1}}),
                                              term(9, {{5, 1}, {1, 1}}), term(9, {{6, 1}, {2, 1}}),
                                              term(-27, {{3, 1}, {5, 1}}), term(-1, {{4, 1}, {6, 1}})}),
                 right_incenter, "30-60-90 incenter, pairwise products", {}});

  out.push_back({"thm7.1", powers(Q::Inradius, 1, {{1, 5}, {2, 6}, {4, 1}, {3, -1}, {5, -3}, {6, -15}}),
                 Predicate::fixed(CevianConfig::make(10, 30, 80, 20)), "linear inradius relation at (10,30,80,20)",
                 {}});
  out.push_back({"thm7.2", reciprocal_balance(Q::Inradius, {1, 3, 4}, {2, 5, 6}), Predicate::template_only(),
                 "one-parameter family pattern (angles not on record)", {}});
  out.push_back({"thm7.3", reciprocal_balance(Q::Inradius, {1, 4, 6}, {2, 3, 5}), Predicate::template_only(),
                 "one-parameter family pattern (angles not on record)", {}});
  out.push_back({"thm7.4", alternating_product(Q::Area), Predicate::any_interior(),
                 "any interior point: alternate area products agree", {}});
  out.push_back({"thm7.5", reciprocal_balance(Q::Area, {1, 3, 5}, {2, 4, 6}), Predicate::any_interior(),
                 "any interior point: alternate reciprocal area sums agree", {}});
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

constexpr std::int64_t kLattice = 1000;  // samples per degree
constexpr std::int64_t kMargin = 1 * kLattice;

bool needs_acute(NotableCenter c) { return c == NotableCenter::Orthocenter || c == NotableCenter::Circumcenter; }

void check_satisfiable(const Predicate& pred) {
  if (pred.kind != Predicate::Kind::CenterOfShape) return;
  const std::string what = std::string(center_token(pred.center)) + " with " + pred.to_string();
  switch (pred.rule) {
    case ShapeRule::AngleB:
      if (!(pred.angle_b > AngleDeg(1) && pred.angle_b < AngleDeg(178))) {
        throw UnsatisfiablePredicate(what + ": angle B leaves no room for a triangle");
      }
      if (needs_acute(pred.center) && pred.angle_b >= AngleDeg(89)) {
        throw UnsatisfiablePredicate(what + ": center is never interior");
      }
      break;
    case ShapeRule::Exact:
      if (!pred.shape) throw UnsatisfiablePredicate(what + ": no shape given");
      if (needs_acute(pred.center) && !pred.shape->is_acute()) {
        throw UnsatisfiablePredicate(what + ": center is not interior");
      }
      break;
    default: break;
  }
}

VerificationReport run_samples(const std::string& id, std::size_t count, Precision p, int jobs,
                               const std::function<std::vector<Real>(std::size_t)>& eval,
                               std::vector<std::string> observation_labels) {
  const auto results = parallel_map(count, jobs, eval);
  VerificationReport report{id, static_cast<int>(count), Real(p), false, p.bits(), {}};
  for (const auto& label : observation_labels) report.observations.emplace_back(label, Real(p));
  for (const auto& r : results) {
    report.max_relative = max(report.max_relative, r[0]);
    for (std::size_t k = 0; k < report.observations.size(); ++k) {
      report.observations[k].second = max(report.observations[k].second, r[k + 1]);
    }
  }
  report.pass = report.max_relative < pow10(-p.tolerance_digits(), p);
  return report;
}

}  // namespace

std::string Predicate::to_string() const {
  switch (kind) {
    case Kind::CenterOfShape: {
      std::string out = "center=" + std::string(center_token(center)) + ";";
      switch (rule) {
        case ShapeRule::Any: return out + "shape=any";
        case ShapeRule::Acute: return out + "shape=acute";
        case ShapeRule::AngleB: return out + "angleB=" + angle_b.to_string();
        case ShapeRule::Exact: return out + "shape=" + (shape ? shape->to_string() : "?");
      }
      return out;
    }
    case Kind::FixedConfig: {
      const auto q = config->as_array();
      return "quadruple=" + q[0].to_string() + "," + q[1].to_string() + "," + q[2].to_string() + "," +
             q[3].to_string();
    }
    case Kind::AnyInterior: return "any-interior";
    case Kind::Template: return "template";
  }
  return "?";
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_entry(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string export_line(const CatalogEntry& e) {
  return e.id + "\t" + quantity_token(e.relation.quantity()) + "\t" + e.relation.terms_string() + "\t" +
         e.predicate.to_string() + "\t" + e.source;
}

TriangleShape sample_shape(ShapeRule rule, AngleDeg angle_b, std::mt19937_64& rng) {
  const std::int64_t total = 180 * kLattice;
  auto make = [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return TriangleShape::make(AngleDeg(a, kLattice), AngleDeg(b, kLattice), AngleDeg(c, kLattice));
  };
  switch (rule) {
    case ShapeRule::Any:
      for (;;) {
        const std::int64_t a = uniform(rng, kMargin, total - 2 * kMargin);
        const std::int64_t b = uniform(rng, kMargin, total - 2 * kMargin);
        if (total - a - b >= kMargin) return make(a, b, total - a - b);
      }
    case ShapeRule::Acute: {
      const std::int64_t hi = 90 * kLattice - kMargin;
      for (;;) {
        const std::int64_t a = uniform(rng, kMargin, hi);
        const std::int64_t b = uniform(rng, kMargin, hi);
        const std::int64_t c = total - a - b;
        if (c >= kMargin && c <= hi) return make(a, b, c);
      }
    }
    case ShapeRule::AngleB: {
      const AngleDeg rest = AngleDeg(180) - angle_b;
      // A on the lattice inside [1, rest - 1].
      const std::int64_t hi = (kLattice * rest).num() / (kLattice * rest).den() - kMargin;
      const AngleDeg a(uniform(rng, kMargin, hi), kLattice);
      return TriangleShape::make(a, angle_b, rest - a);
    }
    case ShapeRule::Exact: break;
  }
  throw UnsatisfiablePredicate("exact shapes are not sampled");
}

CevianConfig sample_config(std::mt19937_64& rng) {
  const std::int64_t total = 180 * kLattice;
  for (;;) {
    std::int64_t v[4];
    std::int64_t sum = 0;
    for (auto& x : v) {
      x = uniform(rng, kMargin, total - 4 * kMargin);
      sum += x;
    }
    if (total - sum >= kMargin) {
      return CevianConfig::make(AngleDeg(v[0], kLattice), AngleDeg(v[1], kLattice), AngleDeg(v[2], kLattice),
                                AngleDeg(v[3], kLattice));
    }
  }
}

std::vector<CevianAngles> sample_instances(const Predicate& pred, int sample_count, Precision p,
                                           std::mt19937_64& rng) {
  if (!pred.verifiable()) throw InvalidRelation("template entries have no instances");
  check_satisfiable(pred);
  std::vector<CevianAngles> out;
  switch (pred.kind) {
    case Predicate::Kind::FixedConfig: out.push_back(CevianAngles::from(*pred.config, p)); break;
    case Predicate::Kind::AnyInterior:
      for (int i = 0; i < sample_count; ++i) out.push_back(CevianAngles::from(sample_config(rng), p));
      break;
    case Predicate::Kind::CenterOfShape:
      if (pred.rule == ShapeRule::Exact) {
        out.push_back(center_config(*pred.shape, pred.center, p));
      } else {
        for (int i = 0; i < sample_count; ++i) {
          TriangleShape shape = sample_shape(pred.rule, pred.angle_b, rng);
          while (needs_acute(pred.center) &&
                 (shape.A > AngleDeg(89) || shape.B > AngleDeg(89) || shape.C > AngleDeg(89))) {
            shape = sample_shape(pred.rule, pred.angle_b, rng);
          }
          out.push_back(center_config(shape, pred.center, p));
        }
      }
      break;
    case Predicate::Kind::Template: break;
  }
  return out;
}

VerificationReport verify(const CatalogEntry& entry, int sample_count, Precision p, std::uint64_t seed,
                          int jobs) {
  if (sample_count < 1) throw Error("verify needs at least one sample");
  std::mt19937_64 rng(seed ^ fnv1a(entry.id));
  const std::vector<CevianAngles> instances = sample_instances(entry.predicate, sample_count, p, rng);

  std::vector<std::string> labels;
  for (const auto& o : entry.observations) labels.push_back(o.label);
  return run_samples(
      entry.id, instances.size(), p, jobs,
      [&](std::size_t i) {
        const FigureMetrics m = metrics(build_from_angles(instances[i]));
        std::vector<Real> r{evaluate(entry.relation, m).relative};
        for (const auto& o : entry.observations) r.push_back(evaluate(o.relation, m).relative);
        return r;
      },
      labels);
}

namespace {

/// (R/r_i measured, R/r_i predicted by the cotangent formula), R = 1/2.
std::vector<std::pair<Real, Real>> circumcenter_lemma_terms(const TriangleShape& shape, Precision p) {
  const FigureMetrics m = metrics(build_from_angles(center_config(shape, NotableCenter::Circumcenter, p)));
  const Real alpha = (AngleDeg(90) - shape.C).to_radians(p);
  const Real beta = (AngleDeg(90) - shape.A).to_radians(p);
  const Real gamma = (AngleDeg(90) - shape.B).to_radians(p);
  const Real predicted[6] = {cot(alpha) + cot(beta / 2L), cot(gamma) + cot(beta / 2L),
                             cot(beta) + cot(gamma / 2L), cot(alpha) + cot(gamma / 2L),
                             cot(gamma) + cot(alpha / 2L), cot(beta) + cot(alpha / 2L)};
  const Real R("0.5", p);
  std::vector<std::pair<Real, Real>> out;
  for (int i = 0; i < 6; ++i) out.emplace_back(R / m.get(Quantity::Inradius, i + 1), predicted[i]);
  return out;
}

}  // namespace

std::array<Real, 6> check_circumcenter_lemma(const TriangleShape& shape, Precision p) {
  const auto terms = circumcenter_lemma_terms(shape, p);
  std::array<Real, 6> out{Real(p), Real(p), Real(p), Real(p), Real(p), Real(p)};
  for (std::size_t i = 0; i < 6; ++i) out[i] = abs(terms[i].first - terms[i].second);
  return out;
}

Real IncenterRatioResiduals::max() const { return cevian::max(cevian::max(eq1, u), cevian::max(v, w)); }

IncenterRatioResiduals check_incenter_ratios(const TriangleShape& shape, Precision p) {
  const FigureMetrics m = metrics(build_from_angles(center_config(shape, NotableCenter::Incenter, p)));
  const Real a = shape.A.to_radians(p) / 4L;
  const Real b = shape.B.to_radians(p) / 4L;
  const Real c = shape.C.to_radians(p) / 4L;
  const Real ca = cot(a), cb = cot(b);

  const Real eq1 = (cot(b) + cot(a + b)) / (cot(b) + cot(b + c));
  const Real u = (ca - 1L) * (cb * cb + 2L * ca * cb - 1L) / ((ca + cb) * (1L + ca - cb + ca * cb));
  const Real v = (cb - 1L) * (cb * ca * ca - 2L * ca - cb) / ((ca - 1L) * (ca * cb * cb - 2L * cb - ca));
  const Real w = (ca + cb) * (1L - ca + cb + ca * cb) / ((cb - 1L) * (ca * ca + 2L * ca * cb - 1L));

  auto rel = [](const Real& measured, const Real& predicted) { return abs(measured - predicted) / abs(measured); };
  const auto r = m.values(Quantity::Inradius);
  const Real r61 = r[5] / r[0];
  return {rel(r61, eq1), rel(r61, u), rel(r[1] / r[2], v), rel(r[3] / r[4], w)};
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"lem5.1", "eq1-uvw"};
  return ids;
}

VerificationReport verify_check(const std::string& id, int sample_count, Precision p, std::uint64_t seed,
                                int jobs) {
  if (sample_count < 1) throw Error("verify needs at least one sample");
  std::mt19937_64 rng(seed ^ fnv1a(id));
  std::vector<TriangleShape> shapes;
  if (id == "lem5.1") {
    for (int i = 0; i < sample_count; ++i) shapes.push_back(sample_shape(ShapeRule::Acute, {}, rng));
    return run_samples(
        id, shapes.size(), p, jobs,
        [&](std::size_t i) {
          Real worst(p);
          for (const auto& [measured, predicted] : circumcenter_lemma_terms(shapes[i], p)) {
            worst = max(worst, abs(measured - predicted) / measured);
          }
          return std::vector<Real>{worst};
        },
        {});
  }
  if (id == "eq1-uvw") {
    for (int i = 0; i < sample_count; ++i) shapes.push_back(sample_shape(ShapeRule::Any, {}, rng));
    return run_samples(
        id, shapes.size(), p, jobs,
        [&](std::size_t i) { return std::vector<Real>{check_incenter_ratios(shapes[i], p).max()}; }, {});
  }
  throw Error("unknown check '" + id + "'");
}

}  // namespace cevian
