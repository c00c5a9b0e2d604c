#include "cevian/pslq.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "cevian/errors.hpp"
#include "cevian/relation.hpp"

namespace cevian {

int minimum_relation_bits(std::size_t n, std::int64_t max_coeff) {
  const int log2c = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(max_coeff - 1)));
  return 32 + static_cast<int>(n) * log2c + 96;
}

namespace {

Real at(const Real& v, Precision p) {
  Real out(p);
  mpfr_set(out.get(), v.get(), MPFR_RNDN);
  return out;
}

bool fused_add(std::int64_t& acc, std::int64_t t, std::int64_t v) {
  std::int64_t prod = 0;
  return !__builtin_mul_overflow(t, v, &prod) && !__builtin_add_overflow(acc, prod, &acc);
}

// State of one PSLQ run. Indices are 0-based; H is n x (n-1) lower
// trapezoidal, B holds candidate relations in its columns.
class Pslq {
 public:
  Pslq(std::span<const Real> x, Precision p) : n_(x.size()), p_(p), y_(), h_(), b_(n_ * n_, 0) {
    Real norm(p);
    for (const Real& v : x) norm += v * v;
    norm = sqrt(norm);
    for (const Real& v : x) y_.push_back(at(v, p) / norm);

    // s_k = sqrt(sum_{j >= k} y_j^2)
    std::vector<Real> s(n_, Real(p));
    Real acc(p);
    for (std::size_t k = n_; k-- > 0;) {
      acc += y_[k] * y_[k];
      s[k] = sqrt(acc);
    }
    h_.assign(n_ * (n_ - 1), Real(p));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_ - 1 && j <= i; ++j) {
        if (i == j) {
          H(i, j) = s[j + 1] / s[j];
        } else {
          H(i, j) = -(y_[i] * y_[j]) / (s[j] * s[j + 1]);
        }
      }
    }
    for (std::size_t i = 0; i < n_; ++i) B(i, i) = 1;
  }

  Real& H(std::size_t i, std::size_t j) { return h_[i * (n_ - 1) + j]; }
  std::int64_t& B(std::size_t i, std::size_t j) { return b_[i * n_ + j]; }
  const Real& y(std::size_t j) const { return y_[j]; }
  std::size_t size() const { return n_; }

  // Hermite-reduce row i against columns hi..0. False on integer overflow.
  bool reduce_row(std::size_t i, std::size_t hi) {
    for (std::size_t j = hi + 1; j-- > 0;) {
      if (H(j, j).is_zero()) continue;
      const Real q = round(H(i, j) / H(j, j));
      if (q.is_zero()) continue;
      if (q.exponent() > 60) return false;
      const long t = static_cast<long>(q.to_int64());
      y_[j] += y_[i] * t;
      for (std::size_t k = 0; k <= j; ++k) H(i, k) -= H(j, k) * t;
      for (std::size_t k = 0; k < n_; ++k) {
        if (!fused_add(B(k, j), t, B(k, i))) return false;
      }
    }
    return true;
  }

  bool reduce_all() {
    for (std::size_t i = 1; i < n_; ++i) {
      if (!reduce_row(i, i - 1)) return false;
    }
    return true;
  }

  // One iteration: exchange, corner fix, partial reduction.
  bool step(const std::vector<Real>& gamma_pow) {
    std::size_t m = 0;
    Real best(p_);
    for (std::size_t i = 0; i < n_ - 1; ++i) {
      Real v = abs(H(i, i)) * gamma_pow[i];
      if (v > best) {
        best = std::move(v);
        m = i;
      }
    }
    std::swap(y_[m], y_[m + 1]);
    for (std::size_t k = 0; k < n_ - 1; ++k) std::swap(H(m, k), H(m + 1, k));
    for (std::size_t k = 0; k < n_; ++k) std::swap(B(k, m), B(k, m + 1));

    if (m + 2 < n_) {
      const Real t0 = sqrt(H(m, m) * H(m, m) + H(m, m + 1) * H(m, m + 1));
      const Real t1 = H(m, m) / t0;
      const Real t2 = H(m, m + 1) / t0;
      for (std::size_t i = m; i < n_; ++i) {
        const Real t3 = H(i, m);
        const Real t4 = H(i, m + 1);
        H(i, m) = t1 * t3 + t2 * t4;
        H(i, m + 1) = t1 * t4 - t2 * t3;
      }
    }
    for (std::size_t i = m + 1; i < n_; ++i) {
      if (!reduce_row(i, std::min(i - 1, m + 1))) return false;
    }
    return true;
  }

  // Any relation has Euclidean norm at least 1 / max|H_jj|.
  Real norm_lower_bound() {
    Real m(p_);
    for (std::size_t j = 0; j < n_ - 1; ++j) m = max(m, abs(H(j, j)));
    return m.is_zero() ? Real(p_) : 1L / m;
  }

 private:
  std::size_t n_;
  Precision p_;
  std::vector<Real> y_;
  std::vector<Real> h_;
  std::vector<std::int64_t> b_;
};

}  // namespace

std::optional<RelationCandidate> find_integer_relation(std::span<const Real> x, std::int64_t max_coeff,
                                                       Precision p) {
  const std::size_t n = x.size();
  if (n < 2 || n > kMaxRelationLength) throw std::invalid_argument("integer relation input needs 2..16 entries");
  if (max_coeff < 1) throw std::invalid_argument("coefficient bound must be positive");
  if (p.bits() < minimum_relation_bits(n, max_coeff)) {
    throw PrecisionTooLow("integer relation search needs at least " +
                          std::to_string(minimum_relation_bits(n, max_coeff)) + " bits");
  }
  for (const Real& v : x) {
    if (v.is_zero()) throw ZeroInput("integer relation input contains zero");
  }

  const int log2c = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(max_coeff - 1)));
  const Real threshold = pow2(-(p.bits() - 32 - static_cast<long>(n) * log2c), p);
  const Real bound = Real(static_cast<long>(max_coeff), p) * sqrt(Real(static_cast<long>(n), p));
  const Real gamma = sqrt(Real::ratio(4, 3, p));
  std::vector<Real> gamma_pow;
  gamma_pow.push_back(gamma);
  for (std::size_t i = 1; i + 1 < n; ++i) gamma_pow.push_back(gamma_pow.back() * gamma);

  Pslq run(x, p);

  auto accept = [&](std::size_t col) -> std::optional<RelationCandidate> {
    std::vector<std::int64_t> c(n);
    std::int64_t sup = 0;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = run.B(i, col);
      if (c[i] == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
      sup = std::max(sup, c[i] < 0 ? -c[i] : c[i]);
    }
    if (sup == 0 || sup > max_coeff) return std::nullopt;
    c = normalize_coefficients(std::move(c));
    sup = 0;
    Real sum(p);
    Real largest(p);
    for (std::size_t i = 0; i < n; ++i) {
      sup = std::max(sup, c[i] < 0 ? -c[i] : c[i]);
      const Real xi = at(x[i], p);
      sum += xi * static_cast<long>(c[i]);
      largest = max(largest, abs(xi));
    }
    Real residual = abs(sum);
    if (residual > pow10(-p.tolerance_digits(), p) * largest) return std::nullopt;
    return RelationCandidate{std::move(c), std::move(residual), sup};
  };

  // Terminates on detection, on the norm bound exceeding the coefficient
  // bound, on integer overflow, or at the iteration cap.
  auto detect = [&]() -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(run.y(j)) < threshold && (!best || abs(run.y(j)) < abs(run.y(*best)))) best = j;
    }
    return best;
  };

  if (!run.reduce_all()) return std::nullopt;
  const std::size_t cap = 1000 * n;
  for (std::size_t iter = 0; iter <= cap; ++iter) {
    if (const auto col = detect()) return accept(*col);
    if (run.norm_lower_bound() > bound) return std::nullopt;
    if (iter == cap || !run.step(gamma_pow)) return std::nullopt;
  }
  return std::nullopt;
}

bool all_six_involved(const RelationCandidate& candidate) {
  if (candidate.coefficients.empty()) return false;
  for (const auto c : candidate.coefficients) {
    if (c == 0) return false;
  }
  return true;
}

}  // namespace cevian
