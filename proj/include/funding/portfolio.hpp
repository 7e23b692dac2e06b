#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "funding/attribution.hpp"
#include "funding/corpus.hpp"
#include "funding/rational.hpp"

namespace funding {

enum class PortfolioClass : uint8_t { NotFunded, Domestic, CoFunded, Foreign };
std::string portfolio_class_name(PortfolioClass c);

enum class EuMode : uint8_t { Foreign, Domestic };

// Classifies one (publication, author country) pair. Under EuMode::Domestic
// the EU label counts as `country` when the country is an EU member. The
// country must be one of the publication's author countries.
PortfolioClass classify(const Corpus& corpus, const Publication& pub, const PubAttribution& attr,
                        const LabelSpace& labels, const std::string& country, EuMode eu_mode,
                        const std::set<std::string>& eu_members);

struct CountryPortfolioStats {
  std::string country;
  long long m = 0;          // publications authored by the country (full counting)
  long long funded = 0;     // of those, publications with countable funding
  long long exclusive = 0;  // funded solely by this country
  long long cls[4] = {0, 0, 0, 0};  // indexed by PortfolioClass

  bool defined() const { return m > 0; }
  Fraction intensity() const { return Fraction::of(funded, m == 0 ? 1 : m); }
  Fraction exclusive_all() const { return Fraction::of(exclusive, m == 0 ? 1 : m); }
  // Share of funded publications that are exclusively self-funded; nullopt
  // when the country has no funded publications.
  std::optional<Fraction> exclusive_funded() const {
    if (funded == 0) return std::nullopt;
    return Fraction::of(exclusive, funded);
  }
  Fraction class_fraction(PortfolioClass c) const {
    return Fraction::of(cls[static_cast<int>(c)], m == 0 ? 1 : m);
  }
};

CountryPortfolioStats country_portfolio_stats(const Corpus& corpus,
                                              const std::vector<PubAttribution>& attrs,
                                              const LabelSpace& labels,
                                              const std::string& country, EuMode eu_mode,
                                              const std::set<std::string>& eu_members);

// Stats for every author country in the corpus, keyed by code.
std::map<std::string, CountryPortfolioStats> all_portfolio_stats(
    const Corpus& corpus, const std::vector<PubAttribution>& attrs, const LabelSpace& labels,
    EuMode eu_mode, const std::set<std::string>& eu_members);

// Five-number box summary. Quartiles use linear interpolation on the sorted
// sample (position (n-1)*q); whiskers reach the extreme values within
// 1.5*IQR of the quartiles.
struct BoxStats {
  long long n = 0;
  double q1 = 0, median = 0, q3 = 0;
  double whisker_lo = 0, whisker_hi = 0;
  std::vector<double> outliers;
};

BoxStats box_stats(std::vector<double> values);

// Groups per-country values by continent. Unmapped countries are returned in
// `unmapped` and excluded from the summaries.
struct ContinentRollup {
  std::map<std::string, BoxStats> by_continent;
  std::map<std::string, std::vector<std::pair<std::string, double>>> values;  // raw, sorted
  std::vector<std::string> unmapped;
};

ContinentRollup continent_rollup(const std::map<std::string, double>& value_by_country,
                                 const std::map<std::string, std::string>& continent_map);

// Builtin country -> continent table.
std::map<std::string, std::string> builtin_continent_map();

}  // namespace funding
