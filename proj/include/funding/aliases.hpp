#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace funding {

// Splits a normalized name into word tokens (runs of alphanumerics; bytes
// >= 0x80 count as word characters).
std::vector<std::string> word_tokens(std::string_view norm_name);

// Country names found inside a funder name string. eu is sticky: once an EU
// token appears anywhere, the string classifies as EU regardless of country
// names alongside it.
struct AliasScan {
  bool eu = false;
  std::vector<std::string> codes;  // distinct matched countries, sorted
};

class CountryAliasTable {
 public:
  // Builtin names, variants and adjectival forms for ~115 countries.
  static CountryAliasTable builtin();

  // TSV rows `alias<TAB>code`, '#' comments and blank lines skipped.
  // Returns nullopt and sets `error` on unreadable file, malformed row, or
  // an alias mapped to two codes.
  static std::optional<CountryAliasTable> load_tsv(const std::string& path, std::string* error);

  // False (and untouched table) if the alias already maps to another code.
  bool add(std::string_view alias, std::string_view code);

  void set_eu_tokens(std::set<std::string> tokens) { eu_tokens_ = std::move(tokens); }

  // Word-boundary scan, longest alias first; consumed tokens are not
  // rescanned, so "south korea" yields KR alone and never a second match
  // on the bare "korea".
  AliasScan scan(std::string_view norm_name) const;

  // Whole-string lookup (for canonicalizing country fields, not funder
  // names): the entire input must be one alias.
  std::optional<std::string> exact(std::string_view name) const;

  size_t size() const { return alias_to_code_.size(); }

 private:
  std::unordered_map<std::string, std::string> alias_to_code_;  // token-joined key -> code
  std::set<std::string> eu_tokens_ = {"eu", "european"};
  size_t max_alias_tokens_ = 1;
};

}  // namespace funding
