#include "cevian/relation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cevian/errors.hpp"

namespace cevian {

std::vector<std::int64_t> normalize_coefficients(std::vector<std::int64_t> c) {
  std::int64_t g = 0;
  for (auto x : c) g = std::gcd(g, x);
  if (g == 0) return c;
  const auto first = std::find_if(c.begin(), c.end(), [](std::int64_t x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : c) x /= g;
  return c;
}

namespace {

/// Monomials involving x1 come first, then x2, and so on; ties on the
/// support fall back to descending exponents.
struct MonomialOrder {
  bool operator()(const Exponents& x, const Exponents& y) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((x[i] != 0) != (y[i] != 0)) return x[i] != 0;
    }
    return x > y;
  }
};

}  // namespace

Relation Relation::make(Quantity q, std::vector<Term> terms) {
  std::map<Exponents, std::int64_t, MonomialOrder> merged;
  for (const Term& t : terms) {
    if (t.exponents == Exponents{}) throw InvalidRelation("constant monomial in relation");
    merged[t.exponents] += t.coefficient;
  }
  std::vector<Term> out;
  std::vector<std::int64_t> coefficients;
  for (const auto& [e, c] : merged) {
    if (c == 0) continue;
    out.push_back({c, e});
    coefficients.push_back(c);
  }
  if (out.size() < 2) throw InvalidRelation("a relation needs at least two nonzero terms");
  coefficients = normalize_coefficients(std::move(coefficients));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].coefficient = coefficients[i];
  return Relation(q, std::move(out));
}

Relation Relation::linear(Quantity q, std::span<const std::int64_t> coefficients, int power) {
  if (coefficients.size() != 6) throw InvalidRelation("linear relation needs six coefficients");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < 6; ++i) {
    Exponents e{};
    e[i] = power;
    terms.push_back({coefficients[i], e});
  }
  return make(q, std::move(terms));
}

bool Relation::homogeneous(int* degree) const {
  auto deg = [](const Term& t) { return std::accumulate(t.exponents.begin(), t.exponents.end(), 0); };
  const int d = deg(terms_.front());
  for (const Term& t : terms_) {
    if (deg(t) != d) return false;
  }
  if (degree) *degree = d;
  return true;
}

std::string Relation::to_string() const {
  const char sym = quantity_token(quantity_);
  std::string out;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const Term& t = terms_[j];
    const std::int64_t mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    if (j == 0) {
      if (t.coefficient < 0) out += "-";
    } else {
      out += t.coefficient < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int i = 0; i < 6; ++i) {
      const int e = t.exponents[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += sym + std::to_string(i + 1);
      if (e != 1) mono += "^" + std::to_string(e);
    }
    out += mag == 1 ? mono : std::to_string(mag) + "*" + mono;
  }
  return out + " = 0";
}

std::string Relation::terms_string() const {
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += ";";
    out += std::to_string(t.coefficient) + ":";
    for (std::size_t i = 0; i < 6; ++i) {
      if (i) out += ",";
      out += std::to_string(t.exponents[i]);
    }
  }
  return out;
}

RelationResidual evaluate(const Relation& relation, const FigureMetrics& metrics) {
  const auto x = metrics.values(relation.quantity());
  const Precision p = x[0].precision();
  Real sum(p);
  Real largest(p);
  for (const Term& t : relation.terms()) {
    Real term(static_cast<long>(t.coefficient), p);
    for (std::size_t i = 0; i < 6; ++i) {
      if (t.exponents[i] != 0) term *= pow(x[i], t.exponents[i]);
    }
    largest = max(largest, abs(term));
    sum += term;
  }
  Real relative = largest.is_zero() ? Real(p) : abs(sum) / largest;
  return {std::move(sum), std::move(relative)};
}

}  // namespace cevian
