#include "cevian/angle.hpp"

#include <charconv>
#include <numeric>

#include "cevian/errors.hpp"

namespace cevian {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(x, y, &r)) throw Error("angle arithmetic overflow");
  return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw Error("angle arithmetic overflow");
  return r;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("bad angle '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

AngleDeg::AngleDeg(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParseError("angle with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

AngleDeg AngleDeg::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return AngleDeg(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || frac.front() == '-' || frac.front() == '+') {
      throw ParseError("bad angle '" + std::string(text) + "'");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole =
        (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, text);
    const std::int64_t f = parse_int(frac, text);
    const std::int64_t num = checked_add(checked_mul(whole < 0 ? -whole : whole, den), f);
    return AngleDeg(negative ? -num : num, den);
  }
  return AngleDeg(parse_int(text, text));
}

Real AngleDeg::to_radians(Precision p) const {
  Real r = Real::pi(p);
  r *= static_cast<long>(num_);
  r /= static_cast<long>(checked_mul(den_, 180));
  return r;
}

std::string AngleDeg::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

AngleDeg operator+(AngleDeg x, AngleDeg y) {
  const std::int64_t g = std::gcd(x.den_, y.den_);
  return AngleDeg(checked_add(checked_mul(x.num_, y.den_ / g), checked_mul(y.num_, x.den_ / g)),
                  checked_mul(x.den_, y.den_ / g));
}

AngleDeg operator-(AngleDeg x, AngleDeg y) { return x + (-y); }

AngleDeg operator*(std::int64_t k, AngleDeg x) { return AngleDeg(checked_mul(k, x.num_), x.den_); }

AngleDeg operator/(AngleDeg x, std::int64_t k) { return AngleDeg(x.num_, checked_mul(x.den_, k)); }

std::strong_ordering operator<=>(AngleDeg x, AngleDeg y) {
  return checked_mul(x.num_, y.den_) <=> checked_mul(y.num_, x.den_);
}

}  // namespace cevian
