#include "cevian/records.hpp"

#include "cevian/errors.hpp"

namespace cevian {

namespace {

constexpr std::pair<Basis, std::string_view> kBasisTokens[] = {
    {Basis::Identity, "r"},          {Basis::Reciprocal, "recip"},         {Basis::Square, "sq"},
    {Basis::ReciprocalSquare, "recipsq"}, {Basis::ReciprocalQuartic, "recip4"}, {Basis::PairwiseProducts, "pairs"},
};

int basis_power(Basis b) {
  switch (b) {
    case Basis::Identity: return 1;
    case Basis::Reciprocal: return -1;
    case Basis::Square: return 2;
    case Basis::ReciprocalSquare: return -2;
    case Basis::ReciprocalQuartic: return -4;
    case Basis::PairwiseProducts: return 1;
  }
  return 1;
}

}  // namespace

std::string_view basis_token(Basis b) {
  for (const auto& [basis, token] : kBasisTokens) {
    if (basis == b) return token;
  }
  return "?";
}

Basis parse_basis(std::string_view token) {
  for (const auto& [basis, t] : kBasisTokens) {
    if (t == token) return basis;
  }
  throw ParseError("unknown basis '" + std::string(token) + "' (r, recip, sq, recipsq, recip4, pairs)");
}

std::size_t basis_length(Basis b) { return b == Basis::PairwiseProducts ? 15 : 6; }

std::vector<Real> apply_basis(Basis b, std::span<const Real> r) {
  std::vector<Real> out;
  if (b == Basis::PairwiseProducts) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) out.push_back(r[i] * r[j]);
    }
    return out;
  }
  for (const Real& v : r) out.push_back(pow(v, basis_power(b)));
  return out;
}

Relation basis_relation(Basis b, std::span<const std::int64_t> coefficients) {
  if (coefficients.size() != basis_length(b)) throw InvalidRelation("coefficient count does not match the basis");
  if (b != Basis::PairwiseProducts) return Relation::linear(Quantity::Inradius, coefficients, basis_power(b));
  std::vector<Term> terms;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j, ++k) {
      Exponents e{};
      e[i] = 1;
      e[j] = 1;
      terms.push_back({coefficients[k], e});
    }
  }
  return Relation::make(Quantity::Inradius, std::move(terms));
}

std::string_view family_status_token(FamilyStatus s) {
  switch (s) {
    case FamilyStatus::Extrapolated: return "extrapolated";
    case FamilyStatus::Confirmed: return "confirmed";
    case FamilyStatus::Refuted: return "refuted";
  }
  return "?";
}

FamilyStatus parse_family_status(std::string_view token) {
  for (auto s : {FamilyStatus::Extrapolated, FamilyStatus::Confirmed, FamilyStatus::Refuted}) {
    if (family_status_token(s) == token) return s;
  }
  throw ParseError("unknown family status '" + std::string(token) + "'");
}

}  // namespace cevian
