#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cevian/centers.hpp"
#include "cevian/relation.hpp"

namespace cevian {

/// Which triangles an entry's center requirement ranges over.
enum class ShapeRule {
  Any,     // every triangle
  Acute,   // every acute triangle
  AngleB,  // every triangle with ∠B = Predicate::angle_b
  Exact,   // one triangle, Predicate::shape
};

/// Where a catalog relation is claimed to hold.
struct Predicate {
  enum class Kind {
    CenterOfShape,  // P is `center` of a triangle allowed by `rule`
    FixedConfig,    // exactly `config`
    AnyInterior,    // every interior P of every triangle
    Template,       // coefficient pattern only; no instances on record
  };

  Kind kind = Kind::AnyInterior;
  NotableCenter center = NotableCenter::Incenter;
  ShapeRule rule = ShapeRule::Any;
  AngleDeg angle_b;
  std::optional<TriangleShape> shape;
  std::optional<CevianConfig> config;

  static Predicate center_of(NotableCenter c, ShapeRule rule = ShapeRule::Any) {
    return {Kind::CenterOfShape, c, rule, {}, std::nullopt, std::nullopt};
  }
  static Predicate center_with_angle_b(NotableCenter c, AngleDeg b) {
    return {Kind::CenterOfShape, c, ShapeRule::AngleB, b, std::nullopt, std::nullopt};
  }
  static Predicate center_of_shape(NotableCenter c, TriangleShape s) {
    return {Kind::CenterOfShape, c, ShapeRule::Exact, {}, s, std::nullopt};
  }
  static Predicate fixed(CevianConfig cfg) { return {Kind::FixedConfig, {}, {}, {}, std::nullopt, cfg}; }
  static Predicate any_interior() { return {}; }
  static Predicate template_only() { return {Kind::Template, {}, {}, {}, std::nullopt, std::nullopt}; }

  bool verifiable() const { return kind != Kind::Template; }
  /// Export form, e.g. "center=incenter;angleB=60" or "quadruple=10,30,80,20".
  std::string to_string() const;
};

/// An informational side relation reported next to an entry but never
/// asserted.
struct Observation {
  std::string label;
  Relation relation;
};

struct CatalogEntry {
  std::string id;
  Relation relation;
  Predicate predicate;
  std::string source;
  std::vector<Observation> observations;
};

/// Every relation among the subtriangle quantities shipped with the library.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& id);

/// Tab-separated export: id, quantity, terms, predicate, source.
std::string export_line(const CatalogEntry& entry);

struct VerificationReport {
  std::string id;
  int samples = 0;
  Real max_relative;
  bool pass = false;
  int precision_bits = 0;
  /// label -> max relative residual of each observation.
  std::vector<std::pair<std::string, Real>> observations;
};

/// Samples instances satisfying the entry's predicate (triangle angles on a
/// 1/1000-degree lattice, at least 1 degree each), evaluates the relation,
/// and reports the largest relative residual. Pass iff it is below
/// 10^-tolerance_digits. Fixed predicates are evaluated once. Deterministic
/// in (entry, sample_count, precision, seed) regardless of `jobs`.
/// Throws UnsatisfiablePredicate, or InvalidRelation for templates.
VerificationReport verify(const CatalogEntry& entry, int sample_count, Precision p, std::uint64_t seed,
                          int jobs = 1);

/// Instances drawn for an entry's predicate, in sample order.
std::vector<CevianAngles> sample_instances(const Predicate& predicate, int sample_count, Precision p,
                                           std::mt19937_64& rng);

/// |R/r_i - (cot + cot/2 formula)| for the six subtriangles with P at the
/// circumcenter, where R = 1/2. Throws CenterNotInterior if not acute.
std::array<Real, 6> check_circumcenter_lemma(const TriangleShape& shape, Precision p);

/// Relative residuals of the incenter ratio formulas, with a = A/4, b = B/4,
/// c = C/4, C_a = cot a, C_b = cot b.
struct IncenterRatioResiduals {
  Real eq1;  // r6/r1 against (cot b + cot(a+b)) / (cot b + cot(b+c))
  Real u;    // r6/r1 against the rational form in C_a, C_b
  Real v;    // r2/r3
  Real w;    // r4/r5
  Real max() const;
};

IncenterRatioResiduals check_incenter_ratios(const TriangleShape& shape, Precision p);

/// Named numeric checks that are not monomial relations: "lem5.1" and
/// "eq1-uvw".
const std::vector<std::string>& check_ids();

/// Sampled verification of a named check; same contract as verify().
VerificationReport verify_check(const std::string& id, int sample_count, Precision p, std::uint64_t seed,
                                int jobs = 1);

/// Random exact triangle with all angles >= 1 degree satisfying the rule.
TriangleShape sample_shape(ShapeRule rule, AngleDeg angle_b, std::mt19937_64& rng);

/// Random exact config with a, b, c, d and the apex angle all >= 1 degree.
CevianConfig sample_config(std::mt19937_64& rng);

}  // namespace cevian
