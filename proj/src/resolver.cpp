#include "funding/resolver.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "funding/country_data.hpp"

namespace funding {

std::string Assignment::to_string() const {
  switch (kind) {
    case LabelKind::Country: return code;
    case LabelKind::Eu: return "EU";
    case LabelKind::MultiNation: return "MULTI";
    case LabelKind::Unresolved: return "UNRESOLVED";
    case LabelKind::Excluded: return "EXCLUDED";
  }
  return "UNRESOLVED";
}

std::optional<Assignment> Assignment::parse(const std::string& token) {
  if (token == "EU") return Assignment::eu();
  if (token == "MULTI") return Assignment::multi();
  if (token == "UNRESOLVED") return Assignment::unresolved();
  if (token == "EXCLUDED") return Assignment::excluded();
  if (token.size() == 2 && std::isupper(static_cast<unsigned char>(token[0])) &&
      std::isupper(static_cast<unsigned char>(token[1])))
    return Assignment::country(token);
  return std::nullopt;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Curated: return "curated";
    case Method::NamePattern: return "name_pattern";
    case Method::AuthorshipMajority: return "authorship_majority";
    case Method::FrequencyExcluded: return "frequency_excluded";
    case Method::TieUnresolved: return "tie_unresolved";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "curated") return Method::Curated;
  if (name == "name_pattern") return Method::NamePattern;
  if (name == "authorship_majority") return Method::AuthorshipMajority;
  if (name == "frequency_excluded") return Method::FrequencyExcluded;
  if (name == "tie_unresolved") return Method::TieUnresolved;
  return std::nullopt;
}

std::string ResolutionReport::to_json() const {
  nlohmann::ordered_json j;
  j["total_names"] = total_names;
  j["retained_names"] = retained_names;
  j["by_method"] = nlohmann::ordered_json::object();
  j["pct_of_retained_by_method"] = nlohmann::ordered_json::object();
  for (const auto& [m, n] : by_method) {
    j["by_method"][m] = n;
    if (retained_names > 0 && m != "frequency_excluded")
      j["pct_of_retained_by_method"][m] =
          100.0 * static_cast<double>(n) / static_cast<double>(retained_names);
  }
  j["by_assignment"] = nlohmann::ordered_json::object();
  j["pct_of_retained_by_assignment"] = nlohmann::ordered_json::object();
  for (const auto& [a, n] : by_assignment) {
    j["by_assignment"][a] = n;
    if (retained_names > 0 && a != "excluded")
      j["pct_of_retained_by_assignment"][a] =
          100.0 * static_cast<double>(n) / static_cast<double>(retained_names);
  }
  return j.dump();
}

std::optional<CuratedMap> CuratedMap::parse_tsv(const std::string& text,
                                                const std::string& origin, std::string* error) {
  CuratedMap map;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      if (error) *error = origin + ":" + std::to_string(lineno) + ": expected name<TAB>assignment";
      return std::nullopt;
    }
    std::string name = normalize_name(line.substr(0, tab));
    std::string token = normalize_name(line.substr(tab + 1));
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    std::optional<Assignment> a;
    if (token == "EU" || token == "MULTI") {
      a = Assignment::parse(token);
    } else if (find_country(token) != nullptr) {
      a = Assignment::country(token);
    }
    if (!a) {
      if (error)
        *error = origin + ":" + std::to_string(lineno) + ": unknown country code '" + token + "'";
      return std::nullopt;
    }
    map.entries[name] = *a;
  }
  return map;
}

std::optional<CuratedMap> CuratedMap::load_tsv(const std::string& path, std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open curated map: " + path;
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tsv(buf.str(), path, error);
}

std::map<std::string, long long> count_frequencies(const Corpus& corpus) {
  std::vector<long long> by_id(corpus.funders.size(), 0);
  for (const auto& pub : corpus.pubs) {
    for (const auto& ack : pub.acks) ++by_id[ack.funder];
  }
  std::map<std::string, long long> out;
  for (uint32_t id = 0; id < corpus.funders.size(); ++id) {
    if (by_id[id] > 0) out[corpus.funder_name(id)] = by_id[id];
  }
  return out;
}

std::optional<Assignment> classify_scan(const AliasScan& scan) {
  if (scan.eu) return Assignment::eu();
  if (scan.codes.empty()) return std::nullopt;
  if (scan.codes.size() == 1) return Assignment::country(scan.codes.front());
  return Assignment::multi();
}

AuthorshipResult infer_by_authorship(const std::map<std::string, long long>& country_pub_counts) {
  if (country_pub_counts.empty())
    return {Assignment::unresolved(), Method::AuthorshipMajority};
  long long best = 0;
  for (const auto& [code, n] : country_pub_counts) best = std::max(best, n);
  std::vector<const std::string*> at_max;
  for (const auto& [code, n] : country_pub_counts) {
    if (n == best) at_max.push_back(&code);
  }
  if (at_max.size() > 1) return {Assignment::unresolved(), Method::TieUnresolved};
  return {Assignment::country(*at_max.front()), Method::AuthorshipMajority};
}

ResolutionResult resolve_all(const Corpus& corpus, const CuratedMap& curated,
                             const CountryAliasTable& aliases, const CorpusConfig& cfg) {
  ResolutionResult result;
  auto frequencies = count_frequencies(corpus);

  // Publications acknowledging each retained funder, for the authorship stage.
  // Presence counting: one count per (funder, publication, country).
  std::map<std::string, std::map<std::string, long long>> authorship;
  for (const auto& pub : corpus.pubs) {
    std::vector<uint32_t> distinct;
    for (const auto& ack : pub.acks) distinct.push_back(ack.funder);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (uint32_t f : distinct) {
      const std::string& name = corpus.funder_name(f);
      auto it = frequencies.find(name);
      if (it == frequencies.end() || it->second < cfg.min_funder_frequency) continue;
      auto& counts = authorship[name];
      for (uint16_t c : pub.countries) ++counts[corpus.country(c)];
    }
  }

  for (const auto& [name, freq] : frequencies) {
    FunderRecord rec;
    rec.norm_name = name;
    rec.frequency = freq;
    if (freq < cfg.min_funder_frequency) {
      rec.assignment = Assignment::excluded();
      rec.method = Method::FrequencyExcluded;
    } else if (auto cur = curated.entries.find(name); cur != curated.entries.end()) {
      rec.assignment = cur->second;
      rec.method = Method::Curated;
    } else if (auto patt = classify_scan(aliases.scan(name))) {
      rec.assignment = *patt;
      rec.method = Method::NamePattern;
    } else {
      auto it = authorship.find(name);
      AuthorshipResult inferred = infer_by_authorship(
          it == authorship.end() ? std::map<std::string, long long>{} : it->second);
      rec.assignment = inferred.assignment;
      rec.method = inferred.method;
    }
    result.report.total_names++;
    if (freq >= cfg.min_funder_frequency) result.report.retained_names++;
    result.report.by_method[method_name(rec.method)]++;
    std::string akey;
    switch (rec.assignment.kind) {
      case LabelKind::Country: akey = "country"; break;
      case LabelKind::Eu: akey = "eu"; break;
      case LabelKind::MultiNation: akey = "multi_nation"; break;
      case LabelKind::Unresolved: akey = "unresolved"; break;
      case LabelKind::Excluded: akey = "excluded"; break;
    }
    result.report.by_assignment[akey]++;
    result.table.emplace(name, std::move(rec));
  }
  return result;
}

}  // namespace funding
