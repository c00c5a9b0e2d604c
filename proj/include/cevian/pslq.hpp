#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cevian/real.hpp"

namespace cevian {

/// Integer vector c with c . x ~ 0, found by find_integer_relation.
struct RelationCandidate {
  std::vector<std::int64_t> coefficients;  // gcd 1, first nonzero entry positive
  Real residual;                           // |sum c_i x_i| at working precision
  std::int64_t sup_norm = 0;
};

inline constexpr std::int64_t kDefaultMaxCoeff = 100;
inline constexpr std::size_t kMaxRelationLength = 16;

/// Smallest working precision accepted for n inputs and a coefficient
/// bound: 32 + n * ceil(log2(max_coeff)) + 96.
int minimum_relation_bits(std::size_t n, std::int64_t max_coeff);

/// PSLQ search for a small integer relation among x, which is read at
/// precision p. Returns a candidate only when its residual is at most
/// 10^-tolerance_digits * max|x_i| and every |c_i| <= max_coeff. nullopt
/// means nothing within the bound was detected, not that none exists.
/// Throws PrecisionTooLow below minimum_relation_bits and ZeroInput when
/// some x_i is zero. Accepts 2..kMaxRelationLength entries so that the 15
/// pairwise products of six quantities fit.
std::optional<RelationCandidate> find_integer_relation(std::span<const Real> x, std::int64_t max_coeff,
                                                       Precision p);

/// True iff every coefficient is nonzero.
bool all_six_involved(const RelationCandidate& candidate);

}  // namespace cevian
