#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "funding/corpus.hpp"
#include "funding/resolver.hpp"

namespace funding::oracle {

// Deliberately naive re-computation of every aggregate by direct enumeration
// over plain string records. Shares no aggregation code with the pipeline:
// the only common ground is the parsed corpus and the label table handed in
// as data. Quadratic scans are fine at test scale; keep it under ~1e5
// publications.

struct Mention {
  std::string funder;  // normalized name
  std::vector<std::string> grants;
};

struct Pub {
  std::string id;
  int year = 0;
  std::string discipline;
  std::vector<std::string> countries;
  std::vector<Mention> mentions;
};

struct Input {
  std::vector<Pub> pubs;
  std::map<std::string, std::string> labels;  // name -> CN|EU|MULTI|UNRESOLVED|EXCLUDED
  std::set<std::string> eu_members;
  bool eu_domestic = false;
  double alpha = 0.05;
  std::string direction_rule = "either";
};

Input from_corpus(const Corpus& corpus, const ResolutionTable& table);

// Exact sum decomposition: reduced denominator -> summed numerators.
using Decomposition = std::map<long long, long long>;

struct PortfolioCounts {
  long long m = 0, funded = 0, exclusive = 0;
  std::array<long long, 4> cls = {0, 0, 0, 0};  // not_funded, domestic, cofunded, foreign
};

struct ImpactCounts {
  long long m = 0, removed = 0;
  std::optional<double> kl;
};

struct Metrics {
  std::map<int, std::map<std::string, Decomposition>> shares;       // year -> label -> sum f
  std::map<int, long long> funded_by_year;                          // F
  std::map<int, std::map<std::string, Decomposition>> intl_shares;  // international subset
  std::map<int, long long> intl_funded_by_year;
  // (year, subset) -> {pubs, funded, single-label, multi-label}
  std::map<std::pair<int, std::string>, std::array<long long, 4>> incidence;
  std::map<std::string, PortfolioCounts> portfolio;
  std::map<std::string, ImpactCounts> all_international;
  std::map<std::pair<std::string, std::string>, ImpactCounts> funder_impact;
  std::set<std::pair<std::string, std::string>> backbone_kept;
  std::map<std::string, std::string> top_funder;
};

Metrics compute(const Input& input);

}  // namespace funding::oracle
