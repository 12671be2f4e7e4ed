#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mdtq {

// Exact rationals for averages, ratios and the CRITERIA statistic.
using Rational = boost::rational<std::int64_t>;

// Non-negative time with half-tick resolution. Stored as a count of
// half-ticks so that every addition and comparison is exact.
class Ticks {
 public:
  constexpr Ticks() = default;

  static constexpr Ticks from_half_ticks(std::int64_t halves) {
    Ticks t;
    t.halves_ = halves;
    return t;
  }
  static constexpr Ticks whole(std::int64_t ticks) { return from_half_ticks(ticks * 2); }

  constexpr std::int64_t half_ticks() const { return halves_; }
  constexpr bool is_whole() const { return halves_ % 2 == 0; }
  constexpr bool is_zero() const { return halves_ == 0; }
  Rational exact() const { return Rational(halves_, 2); }

  constexpr auto operator<=>(const Ticks&) const = default;

  constexpr Ticks& operator+=(Ticks o) {
    halves_ += o.halves_;
    return *this;
  }
  constexpr Ticks& operator-=(Ticks o) {
    halves_ -= o.halves_;
    return *this;
  }
  friend constexpr Ticks operator+(Ticks a, Ticks b) { return a += b; }
  friend constexpr Ticks operator-(Ticks a, Ticks b) { return a -= b; }
  friend constexpr Ticks operator*(Ticks a, std::int64_t k) { return from_half_ticks(a.halves_ * k); }

  // "74", "66.5"
  std::string str() const {
    const bool neg = halves_ < 0;
    const std::int64_t mag = neg ? -halves_ : halves_;
    std::string s = (neg ? "-" : "") + std::to_string(mag / 2);
    if (mag % 2 != 0) s += ".5";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, Ticks t) { return os << t.str(); }

 private:
  std::int64_t halves_ = 0;
};

constexpr Ticks min(Ticks a, Ticks b) { return a < b ? a : b; }
constexpr Ticks max(Ticks a, Ticks b) { return a < b ? b : a; }

// Parses an integer or a value with exactly one decimal digit that is 0 or 5.
// Returns false on anything else; the sign is accepted so callers can report
// negative values as validation failures rather than syntax errors.
inline bool parse_ticks(std::string_view text, Ticks& out) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  const std::size_t digits_begin = i;
  std::int64_t whole = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    if (whole > (INT64_MAX / 4)) return false;
    whole = whole * 10 + (text[i] - '0');
    ++i;
  }
  if (i == digits_begin) return false;
  std::int64_t halves = whole * 2;
  if (i < text.size()) {
    if (text[i] != '.' || i + 2 != text.size()) return false;
    const char frac = text[i + 1];
    if (frac == '5') {
      halves += 1;
    } else if (frac != '0') {
      return false;
    }
  }
  out = Ticks::from_half_ticks(neg ? -halves : halves);
  return true;
}

// Round-half-up of a non-negative rational to `decimals` places, rendered
// with exactly that many fractional digits.
inline std::string format_decimal(const Rational& value, int decimals) {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool neg = value < 0;
  const Rational mag = neg ? -value : value;
  const Rational scaled = mag * scale + Rational(1, 2);
  const std::int64_t units = scaled.numerator() / scaled.denominator();
  std::string s = std::to_string(units / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(units % scale);
    s += "." + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return (neg && units != 0 ? "-" : "") + s;
}

// Rounds a non-negative rational to the nearest half-tick, halves going up.
inline Ticks round_to_half_tick(const Rational& value) {
  const Rational doubled = value * 2 + Rational(1, 2);
  return Ticks::from_half_ticks(doubled.numerator() / doubled.denominator());
}

}  // namespace mdtq
