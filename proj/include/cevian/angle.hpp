#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "cevian/real.hpp"

namespace cevian {

/// Exact rational angle in degrees, kept in lowest terms with a positive
/// denominator. Grid keys and progression arithmetic rely on exactness, so
/// conversion to radians happens only in `to_radians`.
class AngleDeg {
 public:
  constexpr AngleDeg() = default;
  AngleDeg(std::int64_t degrees) : num_(degrees) {}  // NOLINT(google-explicit-constructor)
  AngleDeg(std::int64_t num, std::int64_t den);

  /// Accepts "15", "-15", "15/2", "22.5".
  static AngleDeg parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Real to_degrees(Precision p) const { return Real::ratio(num_, den_, p); }
  Real to_radians(Precision p) const;

  bool positive() const { return num_ > 0; }

  /// "15" for integers, "15/2" otherwise.
  std::string to_string() const;

  friend AngleDeg operator+(AngleDeg x, AngleDeg y);
  friend AngleDeg operator-(AngleDeg x, AngleDeg y);
  friend AngleDeg operator*(std::int64_t k, AngleDeg x);
  AngleDeg operator-() const { return AngleDeg(-num_, den_); }
  friend AngleDeg operator/(AngleDeg x, std::int64_t k);

  friend bool operator==(AngleDeg x, AngleDeg y) = default;
  friend std::strong_ordering operator<=>(AngleDeg x, AngleDeg y);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace cevian
