#pragma once

#include <set>
#include <span>
#include <string>

namespace funding {

struct CountryInfo {
  const char* code;       // ISO 3166-1 alpha-2
  const char* name;       // canonical English name
  const char* continent;  // Africa | Asia | Europe | North America | South America | Oceania
  bool eu_member;         // snapshot for the 2009-2018 window (EU-28, incl. GB)
  const char* aliases;    // '|'-separated extra spellings and adjectival forms
};

std::span<const CountryInfo> builtin_countries();

const CountryInfo* find_country(const std::string& code);

std::set<std::string> builtin_eu_members();

}  // namespace funding
