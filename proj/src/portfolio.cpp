#include "funding/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "funding/country_data.hpp"

namespace funding {

std::string portfolio_class_name(PortfolioClass c) {
  switch (c) {
    case PortfolioClass::NotFunded: return "not_funded";
    case PortfolioClass::Domestic: return "domestic";
    case PortfolioClass::CoFunded: return "cofunded";
    case PortfolioClass::Foreign: return "foreign";
  }
  return "not_funded";
}

namespace {

// Distinct funding labels of a publication with EU folded into `country`
// when the mode says so. Returns (has `country`, has any other label).
std::pair<bool, bool> label_presence(const PubAttribution& attr, const LabelSpace& labels,
                                     const std::string& country, EuMode eu_mode,
                                     const std::set<std::string>& eu_members) {
  bool eu_as_self = eu_mode == EuMode::Domestic && eu_members.contains(country);
  bool has_self = false, has_other = false;
  for (const auto& [label_id, n] : attr.counts) {
    (void)n;
    const std::string& label = labels.labels[label_id];
    if (label == country || (eu_as_self && label == "EU")) {
      has_self = true;
    } else {
      has_other = true;
    }
  }
  return {has_self, has_other};
}

}  // namespace

PortfolioClass classify(const Corpus& corpus, const Publication& pub, const PubAttribution& attr,
                        const LabelSpace& labels, const std::string& country, EuMode eu_mode,
                        const std::set<std::string>& eu_members) {
  bool is_author = std::any_of(pub.countries.begin(), pub.countries.end(),
                               [&](uint16_t c) { return corpus.country(c) == country; });
  if (!is_author)
    throw std::logic_error("classify: " + country + " is not an author country of " + pub.id);
  if (!attr.funded()) return PortfolioClass::NotFunded;
  auto [has_self, has_other] = label_presence(attr, labels, country, eu_mode, eu_members);
  if (has_self && !has_other) return PortfolioClass::Domestic;
  if (has_self) return PortfolioClass::CoFunded;
  return PortfolioClass::Foreign;
}

std::map<std::string, CountryPortfolioStats> all_portfolio_stats(
    const Corpus& corpus, const std::vector<PubAttribution>& attrs, const LabelSpace& labels,
    EuMode eu_mode, const std::set<std::string>& eu_members) {
  std::map<std::string, CountryPortfolioStats> out;
  for (size_t pi = 0; pi < corpus.pubs.size(); ++pi) {
    const Publication& pub = corpus.pubs[pi];
    const PubAttribution& attr = attrs[pi];
    for (uint16_t ci : pub.countries) {
      const std::string& code = corpus.country(ci);
      auto& stats = out[code];
      stats.country = code;
      ++stats.m;
      PortfolioClass cls;
      if (!attr.funded()) {
        cls = PortfolioClass::NotFunded;
      } else {
        ++stats.funded;
        auto [has_self, has_other] = label_presence(attr, labels, code, eu_mode, eu_members);
        if (has_self && !has_other) {
          cls = PortfolioClass::Domestic;
          ++stats.exclusive;
        } else if (has_self) {
          cls = PortfolioClass::CoFunded;
        } else {
          cls = PortfolioClass::Foreign;
        }
      }
      ++stats.cls[static_cast<int>(cls)];
    }
  }
  return out;
}

CountryPortfolioStats country_portfolio_stats(const Corpus& corpus,
                                              const std::vector<PubAttribution>& attrs,
                                              const LabelSpace& labels,
                                              const std::string& country, EuMode eu_mode,
                                              const std::set<std::string>& eu_members) {
  CountryPortfolioStats stats;
  stats.country = country;
  for (size_t pi = 0; pi < corpus.pubs.size(); ++pi) {
    const Publication& pub = corpus.pubs[pi];
    bool is_author = std::any_of(pub.countries.begin(), pub.countries.end(),
                                 [&](uint16_t c) { return corpus.country(c) == country; });
    if (!is_author) continue;
    ++stats.m;
    PortfolioClass cls = classify(corpus, pub, attrs[pi], labels, country, eu_mode, eu_members);
    ++stats.cls[static_cast<int>(cls)];
    if (cls != PortfolioClass::NotFunded) ++stats.funded;
    if (cls == PortfolioClass::Domestic) ++stats.exclusive;
  }
  return stats;
}

namespace {

// Linear interpolation at position (n-1)*q on the sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted[0];
  double pos = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BoxStats box_stats(std::vector<double> values) {
  BoxStats stats;
  if (values.empty()) return stats;
  std::sort(values.begin(), values.end());
  stats.n = static_cast<long long>(values.size());
  stats.q1 = quantile(values, 0.25);
  stats.median = quantile(values, 0.5);
  stats.q3 = quantile(values, 0.75);
  double iqr = stats.q3 - stats.q1;
  double lo_fence = stats.q1 - 1.5 * iqr;
  double hi_fence = stats.q3 + 1.5 * iqr;
  stats.whisker_lo = stats.q3;
  stats.whisker_hi = stats.q1;
  bool any_in = false;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      stats.outliers.push_back(v);
    } else {
      if (!any_in) {
        stats.whisker_lo = v;
        any_in = true;
      }
      stats.whisker_hi = v;
    }
  }
  if (!any_in) {
    // Degenerate: every value is an outlier; collapse whiskers to the box.
    stats.whisker_lo = stats.q1;
    stats.whisker_hi = stats.q3;
  }
  return stats;
}

ContinentRollup continent_rollup(const std::map<std::string, double>& value_by_country,
                                 const std::map<std::string, std::string>& continent_map) {
  ContinentRollup rollup;
  std::map<std::string, std::vector<double>> grouped;
  for (const auto& [country, value] : value_by_country) {
    auto it = continent_map.find(country);
    if (it == continent_map.end()) {
      rollup.unmapped.push_back(country);
      continue;
    }
    grouped[it->second].push_back(value);
    rollup.values[it->second].emplace_back(country, value);
  }
  for (auto& [continent, values] : grouped) {
    rollup.by_continent[continent] = box_stats(std::move(values));
  }
  return rollup;
}

std::map<std::string, std::string> builtin_continent_map() {
  std::map<std::string, std::string> out;
  for (const auto& c : builtin_countries()) out[c.code] = c.continent;
  return out;
}

}  // namespace funding
