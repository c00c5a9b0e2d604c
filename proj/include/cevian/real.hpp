#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cevian {

/// Working mantissa width in bits. Anything below 64 is rejected; the
/// identity tolerances are derived from this number.
class Precision {
 public:
  static constexpr int kMinBits = 64;

  explicit Precision(int bits);

  int bits() const { return bits_; }

  /// Decimal digits an identity must hold to: floor(0.075 * bits).
  int tolerance_digits() const { return bits_ * 75 / 1000; }

  /// Digits needed to print a value and read it back bit-exactly.
  int roundtrip_digits() const;

  Precision operator+(int extra) const { return Precision(bits_ + extra); }
  friend bool operator==(Precision, Precision) = default;

 private:
  int bits_;
};

/// Arbitrary-precision real backed by MPFR, rounding to nearest.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the larger of the two operand precisions. A moved-from Real may only be
/// assigned to or destroyed.
class Real {
 public:
  explicit Real(Precision p);
  Real(long v, Precision p);
  Real(int v, Precision p) : Real(static_cast<long>(v), p) {}
  Real(double v, Precision p);
  Real(std::string_view decimal, Precision p);

  static Real pi(Precision p);
  /// num/den computed with a single rounding.
  static Real ratio(std::int64_t num, std::int64_t den, Precision p);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  Precision precision() const { return Precision(static_cast<int>(mpfr_get_prec(v_))); }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer; throws if it does not fit in 64 bits.
  std::int64_t to_int64() const;

  /// Scientific notation with `digits` significant digits; 0 means enough
  /// digits to round-trip at this precision.
  std::string to_string(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e such that 2^(e-1) <= |x| < 2^e.
  long exponent() const { return mpfr_get_exp(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  Real operator-() const;

  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y);
  friend Real operator*(const Real& x, const Real& y);
  friend Real operator/(const Real& x, const Real& y);
  friend Real operator*(const Real& x, long y);
  friend Real operator*(long x, const Real& y) { return y * x; }
  friend Real operator/(const Real& x, long y);
  friend Real operator+(const Real& x, long y);
  friend Real operator-(const Real& x, long y);
  friend Real operator-(long x, const Real& y);
  friend Real operator+(long x, const Real& y) { return y + x; }
  friend Real operator/(long x, const Real& y);

  friend bool operator==(const Real& x, const Real& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& x, const Real& y);
  friend bool operator==(const Real& x, long y) { return mpfr_cmp_si(x.v_, y) == 0; }
  friend std::partial_ordering operator<=>(const Real& x, long y);

 private:
  mpfr_t v_;
  bool live_ = true;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real cot(const Real& x);
Real acos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real log10(const Real& x);
/// Round to nearest integer, ties away from zero.
Real round(const Real& x);
Real pow(const Real& x, int n);
/// 10^n at the given precision.
Real pow10(int n, Precision p);
/// 2^n at the given precision (exact).
Real pow2(long n, Precision p);
Real max(const Real& x, const Real& y);
Real min(const Real& x, const Real& y);

/// Degrees to radians at the argument's precision.
Real radians(const Real& degrees);
Real degrees(const Real& radians);

/// Releases MPFR's per-thread constant caches. Worker threads call this
/// before exiting.
void release_thread_caches();

}  // namespace cevian
