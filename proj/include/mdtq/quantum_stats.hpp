#pragma once

#include "mdtq/ticks.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace mdtq {

// Ascending burst values Y_1 <= ... <= Y_N. Never empty.
class SortedBursts {
 public:
  explicit SortedBursts(std::vector<Ticks> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::domain_error("burst sequence is empty");
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  // 1-based access, matching the positional formulas.
  Ticks at(std::size_t position) const { return values_.at(position - 1); }
  std::span<const Ticks> values() const { return values_; }

 private:
  std::vector<Ticks> values_;
};

struct QuantumPair {
  Ticks mtq;
  Ticks utq;
  std::size_t m = 1;

  bool operator==(const QuantumPair&) const = default;
};

inline Ticks median_quantum(const SortedBursts& b) {
  const std::size_t n = b.size();
  if (n % 2 == 1) return b.at((n + 1) / 2);
  // Mean of the two middle values. When they differ by an odd number of half
  // ticks the mean falls on a quarter tick; it is rounded down onto the half
  // tick grid, which never goes below Y_{N/2}.
  const auto sum = b.at(n / 2).half_ticks() + b.at(n / 2 + 1).half_ticks();
  return Ticks::from_half_ticks(sum / 2);
}

// 1-based position ceil(3(N+1)/4), clamped to N.
inline std::size_t upper_quartile_position(std::size_t n) {
  if (n == 0) throw std::domain_error("upper quartile of zero processes");
  return std::min(n, (3 * (n + 1) + 3) / 4);
}

inline Ticks upper_quartile_quantum(const SortedBursts& b) { return b.at(upper_quartile_position(b.size())); }

// Number of leading positions served with the median quantum.
inline std::size_t median_position(std::size_t n) {
  if (n == 0) throw std::domain_error("median position of zero processes");
  return (n + 1) / 2;
}

inline QuantumPair quantum_pair(const SortedBursts& b) {
  return {median_quantum(b), upper_quartile_quantum(b), median_position(b.size())};
}

struct Criteria {
  Rational exact;
  Ticks display;  // exact value rounded half-up to a half tick

  bool operator==(const Criteria&) const = default;
};

// Weighted average quantum (MTQ*m + UTQ*(n-m)) / n.
inline Criteria criteria_quantum(const QuantumPair& q, std::size_t n) {
  if (n == 0) throw std::domain_error("criteria over zero processes");
  if (q.m > n) throw std::domain_error("median position exceeds process count");
  const auto m = static_cast<std::int64_t>(q.m);
  const auto total = static_cast<std::int64_t>(n);
  const Rational exact = (q.mtq.exact() * m + q.utq.exact() * (total - m)) / total;
  return {exact, round_to_half_tick(exact)};
}

struct EightyPercentCheck {
  Rational fraction;  // share of bursts strictly below the quantum
  bool pass = false;  // fraction >= 0.8

  bool operator==(const EightyPercentCheck&) const = default;
};

inline EightyPercentCheck eighty_percent_check(const SortedBursts& b, const Rational& quantum) {
  const auto below = std::count_if(b.values().begin(), b.values().end(),
                                   [&](Ticks y) { return y.exact() < quantum; });
  const Rational fraction(static_cast<std::int64_t>(below), static_cast<std::int64_t>(b.size()));
  return {fraction, fraction >= Rational(4, 5)};
}

}  // namespace mdtq
