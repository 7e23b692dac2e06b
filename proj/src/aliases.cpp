#include "funding/aliases.hpp"

#include <algorithm>
#include <fstream>

#include "funding/corpus.hpp"
#include "funding/country_data.hpp"

namespace funding {

std::vector<std::string> word_tokens(std::string_view norm_name) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : norm_name) {
    bool word = (c >= 0x80) || std::isalnum(c);
    if (word) {
      cur.push_back(static_cast<char>(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

namespace {

std::string token_key(std::string_view alias) {
  std::string key;
  for (const auto& t : word_tokens(normalize_name(alias))) {
    if (!key.empty()) key.push_back(' ');
    key += t;
  }
  return key;
}

}  // namespace

bool CountryAliasTable::add(std::string_view alias, std::string_view code) {
  std::string key = token_key(alias);
  if (key.empty()) return false;
  auto [it, inserted] = alias_to_code_.emplace(key, std::string(code));
  if (!inserted && it->second != code) return false;
  size_t tokens = static_cast<size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
  max_alias_tokens_ = std::max(max_alias_tokens_, tokens);
  return true;
}

CountryAliasTable CountryAliasTable::builtin() {
  CountryAliasTable table;
  for (const auto& c : builtin_countries()) {
    table.add(c.name, c.code);
    std::string_view rest = c.aliases;
    while (!rest.empty()) {
      size_t bar = rest.find('|');
      std::string_view alias = rest.substr(0, bar);
      if (!alias.empty()) table.add(alias, c.code);
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
  }
  return table;
}

std::optional<CountryAliasTable> CountryAliasTable::load_tsv(const std::string& path,
                                                             std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open alias table: " + path;
    return std::nullopt;
  }
  CountryAliasTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      if (error) *error = path + ":" + std::to_string(lineno) + ": expected alias<TAB>code";
      return std::nullopt;
    }
    std::string alias = line.substr(0, tab);
    std::string code = normalize_name(line.substr(tab + 1));
    std::transform(code.begin(), code.end(), code.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (code.size() != 2) {
      if (error) *error = path + ":" + std::to_string(lineno) + ": bad country code";
      return std::nullopt;
    }
    if (!table.add(alias, code)) {
      if (error)
        *error = path + ":" + std::to_string(lineno) + ": alias '" + alias +
                 "' maps to two codes";
      return std::nullopt;
    }
  }
  return table;
}

std::optional<std::string> CountryAliasTable::exact(std::string_view name) const {
  auto it = alias_to_code_.find(token_key(name));
  if (it == alias_to_code_.end()) return std::nullopt;
  return it->second;
}

AliasScan CountryAliasTable::scan(std::string_view norm_name) const {
  AliasScan result;
  std::vector<std::string> tokens = word_tokens(norm_name);
  std::set<std::string> codes;
  size_t i = 0;
  while (i < tokens.size()) {
    if (eu_tokens_.contains(tokens[i])) {
      result.eu = true;
      ++i;
      continue;
    }
    size_t longest = std::min(max_alias_tokens_, tokens.size() - i);
    bool matched = false;
    for (size_t len = longest; len >= 1; --len) {
      std::string key = tokens[i];
      for (size_t k = 1; k < len; ++k) {
        key.push_back(' ');
        key += tokens[i + k];
      }
      auto it = alias_to_code_.find(key);
      if (it != alias_to_code_.end()) {
        codes.insert(it->second);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  result.codes.assign(codes.begin(), codes.end());
  return result;
}

}  // namespace funding
