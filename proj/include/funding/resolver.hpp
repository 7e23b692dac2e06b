#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "funding/aliases.hpp"
#include "funding/corpus.hpp"

namespace funding {

enum class LabelKind : uint8_t { Country, Eu, MultiNation, Unresolved, Excluded };

struct Assignment {
  LabelKind kind = LabelKind::Unresolved;
  std::string code;  // set iff kind == Country

  static Assignment country(std::string code) { return {LabelKind::Country, std::move(code)}; }
  static Assignment eu() { return {LabelKind::Eu, {}}; }
  static Assignment multi() { return {LabelKind::MultiNation, {}}; }
  static Assignment unresolved() { return {LabelKind::Unresolved, {}}; }
  static Assignment excluded() { return {LabelKind::Excluded, {}}; }

  bool countable() const { return kind == LabelKind::Country || kind == LabelKind::Eu; }
  // Metric key: the country code, or "EU". Only valid for countable kinds.
  std::string label() const { return kind == LabelKind::Eu ? "EU" : code; }

  std::string to_string() const;  // CN | EU | MULTI | UNRESOLVED | EXCLUDED
  static std::optional<Assignment> parse(const std::string& token);

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

enum class Method : uint8_t {
  Curated,
  NamePattern,
  AuthorshipMajority,
  FrequencyExcluded,
  TieUnresolved,
};

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

struct FunderRecord {
  std::string norm_name;
  long long frequency = 0;
  Assignment assignment;
  Method method = Method::FrequencyExcluded;
};

// Keyed by norm_name; ordered so emission is deterministic.
using ResolutionTable = std::map<std::string, FunderRecord>;

struct ResolutionReport {
  long long total_names = 0;
  long long retained_names = 0;  // frequency >= min_funder_frequency
  std::map<std::string, long long> by_method;
  std::map<std::string, long long> by_assignment;
  std::string to_json() const;
};

struct CuratedMap {
  std::map<std::string, Assignment> entries;  // norm_name -> country/EU/MULTI

  // TSV rows `name<TAB>assignment`, assignment in {ISO code, EU, MULTI}.
  // Names are normalized on load. Unknown country code is a config error.
  static std::optional<CuratedMap> load_tsv(const std::string& path, std::string* error);
  static std::optional<CuratedMap> parse_tsv(const std::string& text, const std::string& origin,
                                             std::string* error);
};

// Acknowledgement occurrences per normalized name; a name appearing twice in
// one publication counts twice.
std::map<std::string, long long> count_frequencies(const Corpus& corpus);

// Classifies an alias scan: EU token wins over any country names, a single
// country resolves, two or more are multi-nation, none is a no-match.
std::optional<Assignment> classify_scan(const AliasScan& scan);

// Majority vote over publications acknowledging the funder; counts hold how
// many of those publications include each country. Strict unique maximum
// required, a tie is Unresolved.
struct AuthorshipResult {
  Assignment assignment;
  Method method = Method::AuthorshipMajority;
};
AuthorshipResult infer_by_authorship(const std::map<std::string, long long>& country_pub_counts);

struct ResolutionResult {
  ResolutionTable table;
  ResolutionReport report;
};

ResolutionResult resolve_all(const Corpus& corpus, const CuratedMap& curated,
                             const CountryAliasTable& aliases, const CorpusConfig& cfg);

}  // namespace funding
