#include "funding/rational.hpp"

#include <cassert>
#include <cstdlib>

namespace funding {

Fraction Fraction::of(long long num, long long den) {
  assert(den != 0);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Fraction{num, den};
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  // Cross-reduce before multiplying to keep intermediates in range.
  long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  return Fraction::of((a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1));
}

void RationalSum::add(long long num, long long den) {
  assert(den > 0);
  if (num == 0) return;
  long long g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  auto it = terms_.find(den);
  if (it == terms_.end()) {
    terms_.emplace(den, num);
  } else {
    it->second += num;
    if (it->second == 0) terms_.erase(it);
  }
}

void RationalSum::add(const RationalSum& other) {
  // Bucket entries are summed raw. Reducing here would make the stored
  // decomposition depend on how source terms were grouped across chunks.
  for (const auto& [den, num] : other.terms_) {
    auto it = terms_.find(den);
    if (it == terms_.end()) {
      terms_.emplace(den, num);
    } else {
      it->second += num;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

double RationalSum::value() const {
  long double acc = 0.0L;
  for (const auto& [den, num] : terms_) {
    acc += static_cast<long double>(num) / static_cast<long double>(den);
  }
  return static_cast<double>(acc);
}

}  // namespace funding
