#include <doctest.h>

#include <random>

#include "funding/rational.hpp"

using namespace funding;

TEST_CASE("fractions reduce on construction") {
  CHECK(Fraction::of(2, 4) == Fraction::of(1, 2));
  CHECK(Fraction::of(0, 7) == Fraction::of(0, 1));
  CHECK(Fraction::of(-2, 4) == Fraction::of(-1, 2));
  CHECK(Fraction::of(3, -6) == Fraction::of(-1, 2));
  CHECK(Fraction::of(5, 10).value() == doctest::Approx(0.5));
}

TEST_CASE("fraction multiplication stays exact") {
  CHECK(Fraction::of(4, 8) * Fraction::of(8, 10) == Fraction::of(4, 10));
  CHECK(Fraction::of(0, 3) * Fraction::of(7, 9) == Fraction::of(0, 1));
}

TEST_CASE("rational sums bucket reduced terms by denominator") {
  RationalSum sum;
  sum.add(1, 2);
  sum.add(2, 4);  // same reduced term
  sum.add(1, 3);
  CHECK(sum.terms() == std::map<long long, long long>{{2, 2}, {3, 1}});
  CHECK(sum.value() == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(1e-15));
  CHECK(!sum.zero());
  CHECK(RationalSum{}.zero());
}

TEST_CASE("chunked merges equal sequential accumulation") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<long long, long long>> terms;
    int n = 1 + rng() % 60;
    for (int i = 0; i < n; ++i) {
      terms.emplace_back(1 + rng() % 9, 1 + rng() % 12);
    }
    RationalSum sequential;
    for (const auto& [num, den] : terms) sequential.add(num, den);

    size_t chunk = 1 + rng() % 7;
    RationalSum merged;
    for (size_t begin = 0; begin < terms.size(); begin += chunk) {
      RationalSum part;
      for (size_t i = begin; i < std::min(terms.size(), begin + chunk); ++i) {
        part.add(terms[i].first, terms[i].second);
      }
      merged.add(part);
    }
    CHECK(merged == sequential);
    CHECK(merged.value() == sequential.value());
  }
}

TEST_CASE("zero terms vanish") {
  RationalSum sum;
  sum.add(0, 5);
  CHECK(sum.zero());
  sum.add(3, 6);
  sum.add(-1, 2);
  CHECK(sum.zero());
}
