#include "cevian/real.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "cevian/errors.hpp"

namespace cevian {

Precision::Precision(int bits) : bits_(bits) {
  if (bits < kMinBits) {
    throw PrecisionTooLow("precision of " + std::to_string(bits) + " bits is below the minimum of " +
                          std::to_string(kMinBits));
  }
}

int Precision::roundtrip_digits() const {
  return static_cast<int>(mpfr_get_str_ndigits(10, static_cast<mpfr_prec_t>(bits_)));
}

namespace {

mpfr_prec_t wider(const Real& x, const Real& y) {
  return std::max(mpfr_get_prec(x.get()), mpfr_get_prec(y.get()));
}

Precision prec_of(mpfr_prec_t p) { return Precision(static_cast<int>(p)); }

}  // namespace

Real::Real(Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v, Precision p) {
  mpfr_init2(v_, p.bits());
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(std::string_view decimal, Precision p) {
  mpfr_init2(v_, p.bits());
  const std::string s(decimal);
  if (s.empty() || mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    live_ = false;
    throw ParseError("not a decimal number: '" + s + "'");
  }
}

Real Real::pi(Precision p) {
  Real r(p);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::ratio(std::int64_t num, std::int64_t den, Precision p) {
  Real r(static_cast<long>(num), p);
  mpfr_div_si(r.v_, r.v_, static_cast<long>(den), MPFR_RNDN);
  return r;
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  std::memcpy(v_, o.v_, sizeof(mpfr_t));
  live_ = o.live_;
  o.live_ = false;
}

Real& Real::operator=(const Real& o) {
  if (this == &o) return *this;
  if (!live_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    live_ = true;
  } else {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
  }
  mpfr_set(v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this == &o) return *this;
  if (live_) mpfr_clear(v_);
  std::memcpy(v_, o.v_, sizeof(mpfr_t));
  live_ = o.live_;
  o.live_ = false;
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(v_);
}

std::int64_t Real::to_int64() const {
  if (!mpfr_fits_slong_p(v_, MPFR_RNDN)) throw Error("value does not fit in a 64-bit integer");
  return static_cast<std::int64_t>(mpfr_get_si(v_, MPFR_RNDN));
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (digits <= 0) digits = precision().roundtrip_digits();
  if (is_zero()) {
    std::string z = mpfr_signbit(v_) ? "-0." : "0.";
    z.append(static_cast<std::size_t>(std::max(digits - 1, 1)), '0');
    return z + "e+0";
  }
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string out;
  if (mant.front() == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  out.push_back(mant[0]);
  out.push_back('.');
  out.append(mant.size() > 1 ? mant.substr(1) : std::string("0"));
  const long e = static_cast<long>(exp10) - 1;
  out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  return out;
}

Real& Real::operator+=(const Real& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& x, const Real& y) {
  Real r(prec_of(wider(x, y)));
  mpfr_add(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& x, const Real& y) {
  Real r(prec_of(wider(x, y)));
  mpfr_sub(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& x, const Real& y) {
  Real r(prec_of(wider(x, y)));
  mpfr_mul(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& x, const Real& y) {
  Real r(prec_of(wider(x, y)));
  mpfr_div(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& x, long y) {
  Real r(x.precision());
  mpfr_mul_si(r.get(), x.get(), y, MPFR_RNDN);
  return r;
}

Real operator/(const Real& x, long y) {
  Real r(x.precision());
  mpfr_div_si(r.get(), x.get(), y, MPFR_RNDN);
  return r;
}

Real operator+(const Real& x, long y) {
  Real r(x.precision());
  mpfr_add_si(r.get(), x.get(), y, MPFR_RNDN);
  return r;
}

Real operator-(const Real& x, long y) {
  Real r(x.precision());
  mpfr_sub_si(r.get(), x.get(), y, MPFR_RNDN);
  return r;
}

Real operator-(long x, const Real& y) {
  Real r(y.precision());
  mpfr_si_sub(r.get(), x, y.get(), MPFR_RNDN);
  return r;
}

Real operator/(long x, const Real& y) {
  Real r(y.precision());
  mpfr_si_div(r.get(), x, y.get(), MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& x, const Real& y) {
  if (mpfr_unordered_p(x.v_, y.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(x.v_, y.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& x, long y) {
  if (mpfr_nan_p(x.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(x.v_, y);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real cot(const Real& x) { return unary(x, mpfr_cot); }
Real acos(const Real& x) { return unary(x, mpfr_acos); }
Real log10(const Real& x) { return unary(x, mpfr_log10); }

Real atan2(const Real& y, const Real& x) {
  Real r(prec_of(wider(x, y)));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real round(const Real& x) {
  Real r(x.precision());
  mpfr_round(r.get(), x.get());
  return r;
}

Real pow(const Real& x, int n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real pow10(int n, Precision p) {
  Real r(10L, p);
  mpfr_pow_si(r.get(), r.get(), n, MPFR_RNDN);
  return r;
}

Real pow2(long n, Precision p) {
  Real r(1L, p);
  mpfr_mul_2si(r.get(), r.get(), n, MPFR_RNDN);
  return r;
}

Real max(const Real& x, const Real& y) { return x < y ? y : x; }
Real min(const Real& x, const Real& y) { return y < x ? y : x; }

Real radians(const Real& degrees) { return degrees * Real::pi(degrees.precision()) / 180L; }
Real degrees(const Real& radians) { return radians * 180L / Real::pi(radians.precision()); }

void release_thread_caches() { mpfr_free_cache2(MPFR_FREE_LOCAL_CACHE); }

}  // namespace cevian
