#include "funding/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "funding/aliases.hpp"

namespace funding {

namespace {

bool ascii_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }
bool ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && ascii_space(s[b])) ++b;
  while (e > b && ascii_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  size_t b = 0, e = out.size();
  while (b < e && (ascii_punct(out[b]) || out[b] == ' ')) ++b;
  while (e > b && (ascii_punct(out[e - 1]) || out[e - 1] == ' ')) --e;
  return out.substr(b, e - b);
}

uint32_t Interner::intern(std::string_view s) {
  auto it = ids_.find(std::string(s));
  if (it != ids_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(strings_.size());
  strings_.emplace_back(s);
  ids_.emplace(strings_.back(), id);
  return id;
}

std::optional<uint32_t> Interner::find(std::string_view s) const {
  auto it = ids_.find(std::string(s));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool CorpusConfig::valid(std::string* why) const {
  if (min_funder_frequency < 1) {
    if (why) *why = "min_funder_frequency must be >= 1";
    return false;
  }
  if (year_min > year_max) {
    if (why) *why = "year_min must be <= year_max";
    return false;
  }
  return true;
}

std::string IngestReport::to_json() const {
  nlohmann::ordered_json j;
  j["accepted"] = accepted;
  j["rejected"] = rejected;
  j["reject_reasons"] = nlohmann::ordered_json::object();
  for (const auto& [reason, n] : reject_reasons) j["reject_reasons"][reason] = n;
  return j.dump();
}

std::optional<std::string> CountryCanonicalizer::canonicalize(std::string_view raw) const {
  std::string t = trim(raw);
  if (t.size() == 2 && std::isalpha(static_cast<unsigned char>(t[0])) &&
      std::isalpha(static_cast<unsigned char>(t[1]))) {
    t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    t[1] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[1])));
    return t;
  }
  if (!table) return std::nullopt;
  return table->exact(t);
}

namespace {

// One record per line. Returns the reject reason, or empty on success.
std::string parse_record(const std::string& line, Corpus& corpus,
                         std::unordered_set<std::string>& seen_ids,
                         const CountryCanonicalizer* canon) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return "bad_json";

  auto it = j.find("id");
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) return "missing_id";
  std::string id = it->get<std::string>();
  if (seen_ids.contains(id)) return "duplicate_id";

  it = j.find("year");
  if (it == j.end() || !it->is_number_integer()) return "missing_year";
  int year = it->get<int>();

  it = j.find("doc_type");
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
    return "missing_doc_type";
  std::string doc_type = it->get<std::string>();

  it = j.find("discipline");
  if (it != j.end() && it->is_array()) return "multi_discipline";
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty())
    return "missing_discipline";
  std::string discipline = it->get<std::string>();

  it = j.find("countries");
  if (it == j.end() || !it->is_array()) return "missing_countries";
  std::vector<std::string> codes;
  for (const auto& c : *it) {
    if (!c.is_string()) return "bad_country";
    std::string raw = c.get<std::string>();
    if (trim(raw).empty()) continue;
    if (canon) {
      auto code = canon->canonicalize(raw);
      if (!code) return "unknown_country";
      codes.push_back(*code);
    } else {
      std::string t = trim(raw);
      for (char& ch : t) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      codes.push_back(t);
    }
  }
  if (codes.empty()) return "missing_countries";

  std::vector<FunderAck> acks;
  it = j.find("funders");
  if (it != j.end()) {
    if (!it->is_array()) return "bad_funders";
    for (const auto& f : *it) {
      if (!f.is_object()) return "bad_funders";
      auto nm = f.find("name");
      if (nm == f.end() || !nm->is_string()) return "bad_funders";
      std::string raw_name = nm->get<std::string>();
      std::string norm = normalize_name(raw_name);
      if (norm.empty()) return "bad_funders";
      FunderAck ack;
      ack.raw_name = raw_name;
      ack.funder = corpus.funders.intern(norm);
      auto gr = f.find("grants");
      if (gr != f.end()) {
        if (!gr->is_array()) return "bad_funders";
        for (const auto& g : *gr) {
          if (!g.is_string()) return "bad_funders";
          std::string t = trim(g.get<std::string>());
          if (!t.empty()) ack.grants.push_back(std::move(t));
        }
      }
      acks.push_back(std::move(ack));
    }
  }

  Publication pub;
  pub.id = std::move(id);
  pub.year = year;
  pub.doc_type = static_cast<uint16_t>(corpus.doc_types.intern(doc_type));
  pub.discipline = static_cast<uint16_t>(corpus.disciplines.intern(discipline));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  for (const auto& c : codes)
    pub.countries.push_back(static_cast<uint16_t>(corpus.countries.intern(c)));
  std::sort(pub.countries.begin(), pub.countries.end(),
            [&](uint16_t a, uint16_t b) { return corpus.country(a) < corpus.country(b); });
  pub.acks = std::move(acks);
  seen_ids.insert(pub.id);
  corpus.pubs.push_back(std::move(pub));
  return {};
}

}  // namespace

Corpus ingest_corpus(std::istream& in, IngestReport& report, const CountryCanonicalizer* canon) {
  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::string reason = parse_record(line, corpus, seen_ids, canon);
    if (reason.empty()) {
      ++report.accepted;
    } else {
      report.reject(reason);
    }
  }
  return corpus;
}

Corpus filter_corpus(const Corpus& corpus, const CorpusConfig& cfg, IngestReport* report) {
  Corpus out;
  for (const auto& pub : corpus.pubs) {
    const std::string& dt = corpus.doc_types.str(pub.doc_type);
    const std::string& disc = corpus.disciplines.str(pub.discipline);
    std::string reason;
    if (pub.year < cfg.year_min || pub.year > cfg.year_max) {
      reason = "filtered_year";
    } else if (!cfg.allowed_doc_types.contains(dt)) {
      reason = "filtered_doc_type";
    } else if (cfg.excluded_disciplines.contains(disc)) {
      reason = "filtered_discipline";
    } else if (pub.countries.empty()) {
      reason = "filtered_no_countries";
    } else if (disc.empty()) {
      reason = "filtered_no_discipline";
    }
    if (!reason.empty()) {
      if (report) {
        --report->accepted;
        report->reject(reason);
      }
      continue;
    }
    Publication copy;
    copy.id = pub.id;
    copy.year = pub.year;
    copy.doc_type = static_cast<uint16_t>(out.doc_types.intern(dt));
    copy.discipline = static_cast<uint16_t>(out.disciplines.intern(disc));
    for (uint16_t c : pub.countries)
      copy.countries.push_back(static_cast<uint16_t>(out.countries.intern(corpus.country(c))));
    for (const auto& ack : pub.acks) {
      FunderAck a;
      a.funder = out.funders.intern(corpus.funder_name(ack.funder));
      a.raw_name = ack.raw_name;
      a.grants = ack.grants;
      copy.acks.push_back(std::move(a));
    }
    out.pubs.push_back(std::move(copy));
  }
  return out;
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& pub : corpus.pubs) {
    nlohmann::ordered_json j;
    j["id"] = pub.id;
    j["year"] = pub.year;
    j["doc_type"] = corpus.doc_types.str(pub.doc_type);
    j["discipline"] = corpus.disciplines.str(pub.discipline);
    auto countries = nlohmann::ordered_json::array();
    for (uint16_t c : pub.countries) countries.push_back(corpus.country(c));
    j["countries"] = std::move(countries);
    auto funders = nlohmann::ordered_json::array();
    for (const auto& ack : pub.acks) {
      nlohmann::ordered_json f;
      f["name"] = ack.raw_name;
      f["grants"] = ack.grants;
      funders.push_back(std::move(f));
    }
    j["funders"] = std::move(funders);
    out << j.dump() << '\n';
  }
}

}  // namespace funding
