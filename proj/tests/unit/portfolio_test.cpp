#include <doctest.h>

#include <stdexcept>

#include <random>

#include "helpers.hpp"
#include "funding/country_data.hpp"
#include "funding/portfolio.hpp"

using namespace funding;
using testutil::attribute;
using testutil::make_corpus;
using testutil::make_table;
using testutil::PubSpec;

namespace {

const ResolutionTable kTable = make_table({
    {"us agency", Assignment::country("US")},
    {"cn agency", Assignment::country("CN")},
    {"de agency", Assignment::country("DE")},
    {"eu agency", Assignment::eu()},
});

const std::set<std::string> kEu = builtin_eu_members();

}  // namespace

TEST_CASE("classify: the four documented cases") {
  Corpus corpus = make_corpus({
      {.id = "cn_only", .countries = {"CN", "US"}, .acks = {{"cn agency", {}}}},
      {.id = "both", .countries = {"CN", "US"}, .acks = {{"cn agency", {}}, {"us agency", {}}}},
      {.id = "eu", .countries = {"CN", "US"}, .acks = {{"eu agency", {}}}},
      {.id = "none", .countries = {"CN", "US"}},
  });
  auto [labels, attrs] = attribute(corpus, kTable);

  CHECK(classify(corpus, corpus.pubs[0], attrs[0], labels, "CN", EuMode::Foreign, kEu) ==
        PortfolioClass::Domestic);
  CHECK(classify(corpus, corpus.pubs[0], attrs[0], labels, "US", EuMode::Foreign, kEu) ==
        PortfolioClass::Foreign);
  CHECK(classify(corpus, corpus.pubs[1], attrs[1], labels, "CN", EuMode::Foreign, kEu) ==
        PortfolioClass::CoFunded);
  CHECK(classify(corpus, corpus.pubs[1], attrs[1], labels, "US", EuMode::Foreign, kEu) ==
        PortfolioClass::CoFunded);
  CHECK(classify(corpus, corpus.pubs[2], attrs[2], labels, "CN", EuMode::Foreign, kEu) ==
        PortfolioClass::Foreign);
  CHECK(classify(corpus, corpus.pubs[2], attrs[2], labels, "US", EuMode::Foreign, kEu) ==
        PortfolioClass::Foreign);
  CHECK(classify(corpus, corpus.pubs[3], attrs[3], labels, "CN", EuMode::Foreign, kEu) ==
        PortfolioClass::NotFunded);
  CHECK_THROWS_AS(classify(corpus, corpus.pubs[0], attrs[0], labels, "FR", EuMode::Foreign, kEu),
                  std::logic_error);
}

TEST_CASE("EU-as-domestic flips EU funding for members only") {
  Corpus corpus = make_corpus({
      {.id = "a", .countries = {"DE", "US"}, .acks = {{"eu agency", {}}}},
      {.id = "b", .countries = {"DE"}, .acks = {{"eu agency", {}}, {"de agency", {}}}},
  });
  auto [labels, attrs] = attribute(corpus, kTable);

  CHECK(classify(corpus, corpus.pubs[0], attrs[0], labels, "DE", EuMode::Foreign, kEu) ==
        PortfolioClass::Foreign);
  CHECK(classify(corpus, corpus.pubs[0], attrs[0], labels, "DE", EuMode::Domestic, kEu) ==
        PortfolioClass::Domestic);
  // US is not a member; both modes agree.
  CHECK(classify(corpus, corpus.pubs[0], attrs[0], labels, "US", EuMode::Domestic, kEu) ==
        PortfolioClass::Foreign);
  // EU + DE collapses to pure domestic for DE under the domestic mode.
  CHECK(classify(corpus, corpus.pubs[1], attrs[1], labels, "DE", EuMode::Foreign, kEu) ==
        PortfolioClass::CoFunded);
  CHECK(classify(corpus, corpus.pubs[1], attrs[1], labels, "DE", EuMode::Domestic, kEu) ==
        PortfolioClass::Domestic);
}

TEST_CASE("portfolio stats: worked intensities") {
  std::vector<PubSpec> specs;
  for (int i = 0; i < 10; ++i) {
    PubSpec spec;
    spec.id = "p" + std::to_string(i);
    spec.countries = {"CN"};
    if (i < 4) spec.acks = {{"cn agency", {}}};            // exclusively self-funded
    else if (i < 8) spec.acks = {{"us agency", {}}};       // foreign funded
    specs.push_back(spec);
  }
  Corpus corpus = make_corpus(specs);
  auto [labels, attrs] = attribute(corpus, kTable);
  auto stats = country_portfolio_stats(corpus, attrs, labels, "CN", EuMode::Foreign, kEu);
  CHECK(stats.m == 10);
  CHECK(stats.intensity() == Fraction::of(8, 10));
  CHECK(stats.exclusive_all() == Fraction::of(4, 10));
  REQUIRE(stats.exclusive_funded().has_value());
  CHECK(*stats.exclusive_funded() == Fraction::of(4, 8));
  // C_c_funded * I_c == C_c_all, exactly.
  CHECK(*stats.exclusive_funded() * stats.intensity() == stats.exclusive_all());
  CHECK(stats.class_fraction(PortfolioClass::NotFunded) == Fraction::of(2, 10));
}

TEST_CASE("all_portfolio_stats agrees with per-country stats and partitions") {
  std::mt19937_64 rng(17);
  const char* countries[] = {"US", "CN", "DE", "FR"};
  const char* funders[] = {"us agency", "cn agency", "de agency", "eu agency"};
  std::vector<PubSpec> specs;
  for (int i = 0; i < 120; ++i) {
    PubSpec spec;
    spec.id = "p" + std::to_string(i);
    spec.countries = {countries[rng() % 4]};
    if (rng() % 3 == 0) spec.countries.push_back(countries[rng() % 4]);
    int acks = rng() % 3;
    for (int k = 0; k < acks; ++k) spec.acks.push_back({funders[rng() % 4], {}});
    specs.push_back(spec);
  }
  Corpus corpus = make_corpus(specs);
  auto [labels, attrs] = attribute(corpus, kTable);
  for (EuMode mode : {EuMode::Foreign, EuMode::Domestic}) {
    auto stats = all_portfolio_stats(corpus, attrs, labels, mode, kEu);
    for (const auto& [country, s] : stats) {
      auto direct = country_portfolio_stats(corpus, attrs, labels, country, mode, kEu);
      CHECK(direct.m == s.m);
      CHECK(direct.funded == s.funded);
      CHECK(direct.exclusive == s.exclusive);
      long long total = 0;
      for (long long c : s.cls) total += c;
      CHECK(total == s.m);  // the four classes partition the pairs
      CHECK(s.intensity() ==
            Fraction::of(s.m - s.cls[static_cast<int>(PortfolioClass::NotFunded)], s.m));
      if (s.funded > 0) {
        CHECK(*s.exclusive_funded() * s.intensity() == s.exclusive_all());
      }
    }
  }
}

TEST_CASE("EU-domestic mode never shrinks members' domestic-or-cofunded mass") {
  std::mt19937_64 rng(23);
  const char* countries[] = {"DE", "FR", "US", "CN"};
  const char* funders[] = {"us agency", "cn agency", "de agency", "eu agency"};
  std::vector<PubSpec> specs;
  for (int i = 0; i < 150; ++i) {
    PubSpec spec;
    spec.id = "p" + std::to_string(i);
    spec.countries = {countries[rng() % 4]};
    int acks = rng() % 3;
    for (int k = 0; k < acks; ++k) spec.acks.push_back({funders[rng() % 4], {}});
    specs.push_back(spec);
  }
  Corpus corpus = make_corpus(specs);
  auto [labels, attrs] = attribute(corpus, kTable);
  auto foreign = all_portfolio_stats(corpus, attrs, labels, EuMode::Foreign, kEu);
  auto domestic = all_portfolio_stats(corpus, attrs, labels, EuMode::Domestic, kEu);
  for (const auto& [country, f] : foreign) {
    const auto& d = domestic.at(country);
    auto mass = [](const CountryPortfolioStats& s) {
      return s.cls[static_cast<int>(PortfolioClass::Domestic)] +
             s.cls[static_cast<int>(PortfolioClass::CoFunded)];
    };
    if (kEu.contains(country)) {
      CHECK(mass(d) >= mass(f));
    } else {
      for (int c = 0; c < 4; ++c) CHECK(d.cls[c] == f.cls[c]);
    }
  }
}

TEST_CASE("stats for a country with no publications are flagged undefined") {
  Corpus corpus = make_corpus({{.id = "a", .countries = {"US"}}});
  auto [labels, attrs] = attribute(corpus, kTable);
  auto stats = country_portfolio_stats(corpus, attrs, labels, "KE", EuMode::Foreign, kEu);
  CHECK(!stats.defined());
  CHECK(stats.m == 0);
  CHECK(!stats.exclusive_funded().has_value());
}

TEST_CASE("box stats: outlier example") {
  BoxStats box = box_stats({1, 2, 3, 4, 100});
  CHECK(box.n == 5);
  CHECK(box.q1 == doctest::Approx(2.0));
  CHECK(box.median == doctest::Approx(3.0));
  CHECK(box.q3 == doctest::Approx(4.0));
  // IQR = 2, upper fence 7: 100 is the lone outlier, whisker stops at 4.
  REQUIRE(box.outliers.size() == 1);
  CHECK(box.outliers[0] == doctest::Approx(100.0));
  CHECK(box.whisker_lo == doctest::Approx(1.0));
  CHECK(box.whisker_hi == doctest::Approx(4.0));
}

TEST_CASE("box stats: single value and interpolation") {
  BoxStats one = box_stats({0.5});
  CHECK(one.q1 == doctest::Approx(0.5));
  CHECK(one.median == doctest::Approx(0.5));
  CHECK(one.q3 == doctest::Approx(0.5));
  CHECK(one.outliers.empty());

  // Positions (n-1)q on {1,2,3,4}: q1 = 1.75, median = 2.5, q3 = 3.25.
  BoxStats four = box_stats({4, 2, 1, 3});
  CHECK(four.q1 == doctest::Approx(1.75));
  CHECK(four.median == doctest::Approx(2.5));
  CHECK(four.q3 == doctest::Approx(3.25));
}

TEST_CASE("continent rollup groups and reports unmapped countries") {
  std::map<std::string, double> values = {
      {"DE", 0.5}, {"FR", 0.6}, {"CN", 0.8}, {"XX", 0.1}};
  auto rollup = continent_rollup(values, builtin_continent_map());
  CHECK(rollup.by_continent.count("Europe") == 1);
  CHECK(rollup.by_continent.at("Europe").n == 2);
  CHECK(rollup.by_continent.count("Asia") == 1);
  REQUIRE(rollup.unmapped.size() == 1);
  CHECK(rollup.unmapped[0] == "XX");
  // One-country continent: q1 = median = q3.
  CHECK(rollup.by_continent.at("Asia").q1 == doctest::Approx(0.8));
  CHECK(rollup.by_continent.at("Asia").q3 == doctest::Approx(0.8));
  // Empty input -> no rows at all.
  CHECK(continent_rollup({}, builtin_continent_map()).by_continent.empty());
}
