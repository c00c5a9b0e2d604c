#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cevian/geometry.hpp"

namespace cevian {

/// Exponents of x1..x6 in a monomial, where x is one subtriangle quantity.
using Exponents = std::array<int, 6>;

struct Term {
  std::int64_t coefficient = 0;
  Exponents exponents{};

  friend bool operator==(const Term&, const Term&) = default;
};

/// An integer combination of monomials in one quantity, asserted to vanish:
/// sum_j c_j * prod_i x_i^(p_ij) = 0.
///
/// Always stored in canonical form: like terms merged, zero terms dropped,
/// terms ordered by support (those involving x1 first, then x2, ...) and
/// then by descending exponent vector, coefficients divided by
/// their gcd, and the first coefficient positive. Equal relations therefore
/// compare equal member by member.
class Relation {
 public:
  /// Throws InvalidRelation if fewer than two terms survive normalization
  /// or a monomial is constant.
  static Relation make(Quantity q, std::vector<Term> terms);

  /// sum_i c_i * x_i^power, the shape produced by integer-relation search.
  static Relation linear(Quantity q, std::span<const std::int64_t> coefficients, int power);

  Quantity quantity() const { return quantity_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Degree shared by every monomial, if there is one.
  bool homogeneous(int* degree = nullptr) const;

  /// Human form, e.g. "5*r1 + 6*r2 - r3 + r4 - 3*r5 - 15*r6 = 0".
  std::string to_string() const;
  /// Export form: "5:1,0,0,0,0,0;6:0,1,0,0,0,0;...".
  std::string terms_string() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  Relation(Quantity q, std::vector<Term> terms) : quantity_(q), terms_(std::move(terms)) {}

  Quantity quantity_ = Quantity::Inradius;
  std::vector<Term> terms_;
};

/// gcd-reduced copy of an integer vector with its first nonzero entry
/// positive; all-zero input is returned unchanged.
std::vector<std::int64_t> normalize_coefficients(std::vector<std::int64_t> c);

struct RelationResidual {
  Real residual;  // sum of terms
  Real relative;  // |residual| / max |term|
};

RelationResidual evaluate(const Relation& relation, const FigureMetrics& metrics);

}  // namespace cevian
