#pragma once

#include <cstdint>
#include <map>
#include <numeric>

namespace funding {

// Exact ratio of two 64-bit counts. Always stored reduced with den > 0.
struct Fraction {
  long long num = 0;
  long long den = 1;

  static Fraction of(long long num, long long den);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction operator*(const Fraction& a, const Fraction& b);

// Exact sum of count ratios. Each term is reduced on insert and bucketed by
// its denominator, so two sums built from the same per-item ratios compare
// equal with operator== and never lose precision to rounding. Conversion to
// double accumulates buckets in ascending-denominator order, which makes the
// emitted value independent of insertion order and thread partitioning.
class RationalSum {
 public:
  void add(long long num, long long den);
  void add(const RationalSum& other);

  double value() const;
  bool zero() const { return terms_.empty(); }
  const std::map<long long, long long>& terms() const { return terms_; }

  friend bool operator==(const RationalSum&, const RationalSum&) = default;

 private:
  std::map<long long, long long> terms_;  // reduced denominator -> summed numerators
};

}  // namespace funding
