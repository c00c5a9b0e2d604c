#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cevian/geometry.hpp"
#include "cevian/relation.hpp"

namespace cevian {

/// The function f applied to each inradius before relation search.
enum class Basis {
  Identity,           // r
  Reciprocal,         // 1/r
  Square,             // r^2
  ReciprocalSquare,   // 1/r^2
  ReciprocalQuartic,  // 1/r^4
  PairwiseProducts,   // r_i r_j for i < j, 15 values
};

inline constexpr Basis kAllBases[] = {Basis::Identity,         Basis::Reciprocal,        Basis::Square,
                                      Basis::ReciprocalSquare, Basis::ReciprocalQuartic, Basis::PairwiseProducts};

/// "r", "recip", "sq", "recipsq", "recip4", "pairs".
std::string_view basis_token(Basis b);
/// Throws ParseError.
Basis parse_basis(std::string_view token);
/// 6, or 15 for pairwise products.
std::size_t basis_length(Basis b);
/// f applied to the six inradii, in the order relation vectors use.
std::vector<Real> apply_basis(Basis b, std::span<const Real> r);
/// The monomial relation sum_k c_k f_k(r) = 0. Throws InvalidRelation.
Relation basis_relation(Basis b, std::span<const std::int64_t> coefficients);

/// One sweep hit.
struct RelationRecord {
  CevianConfig quadruple;
  Basis basis = Basis::Identity;
  std::vector<std::int64_t> coefficients;
  std::string residual;  // decimal, read at precision_bits
  int precision_bits = 0;

  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;
};

enum class FamilyStatus { Extrapolated, Confirmed, Refuted };
std::string_view family_status_token(FamilyStatus s);
FamilyStatus parse_family_status(std::string_view token);

/// One off-grid test point Q(t) = Q1 + t (Q2 - Q1).
struct FamilySample {
  std::string t;         // decimal
  std::string residual;  // relative residual, decimal
  bool pass = false;

  friend bool operator==(const FamilySample&, const FamilySample&) = default;
};

/// Two equal-coefficient hits and the arithmetic-progression continuation
/// Q3 = 2 Q2 - Q1.
struct FamilyCandidate {
  CevianConfig q1, q2, q3;
  Basis basis = Basis::Identity;
  std::vector<std::int64_t> coefficients;
  FamilyStatus status = FamilyStatus::Extrapolated;
  std::vector<FamilySample> samples;
  int degenerate_samples = 0;
  int precision_bits = 0;

  friend bool operator==(const FamilyCandidate&, const FamilyCandidate&) = default;
};

}  // namespace cevian
