#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace funding {

// Case-fold, collapse whitespace, strip leading/trailing punctuation.
// Idempotent; bytes >= 0x80 pass through untouched.
std::string normalize_name(std::string_view raw);

// Interns strings to dense ids. Ids depend on insertion order, so nothing
// downstream may iterate by id when order-independent output is required;
// emitters sort by the interned string instead.
class Interner {
 public:
  uint32_t intern(std::string_view s);
  std::optional<uint32_t> find(std::string_view s) const;
  const std::string& str(uint32_t id) const { return strings_[id]; }
  uint32_t size() const { return static_cast<uint32_t>(strings_.size()); }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, uint32_t> ids_;
};

struct FunderAck {
  uint32_t funder = 0;              // id in Corpus::funders (normalized name)
  std::string raw_name;             // as found in the record
  std::vector<std::string> grants;  // trimmed, empties dropped
};

struct Publication {
  std::string id;
  int year = 0;
  uint16_t doc_type = 0;
  uint16_t discipline = 0;
  std::vector<uint16_t> countries;  // sorted unique ids in Corpus::countries
  std::vector<FunderAck> acks;
};

struct Corpus {
  std::vector<Publication> pubs;
  Interner doc_types;
  Interner disciplines;
  Interner countries;  // ISO 3166-1 alpha-2, uppercase; "EU" never appears here
  Interner funders;    // normalized funder names

  const std::string& country(uint16_t id) const { return countries.str(id); }
  const std::string& discipline_name(uint16_t id) const { return disciplines.str(id); }
  const std::string& funder_name(uint32_t id) const { return funders.str(id); }
};

struct CorpusConfig {
  int year_min = 2009;
  int year_max = 2018;
  std::set<std::string> allowed_doc_types = {"Article", "Review", "Note"};
  std::set<std::string> excluded_disciplines = {"Arts",          "Health",
                                                "Humanities",    "Professional Fields",
                                                "Psychology",    "Social Sciences"};
  int min_funder_frequency = 2;
  std::set<std::string> eu_members;  // empty -> builtin snapshot
  bool eu_as_domestic = false;

  // The narrower document-type reading; the default above also admits notes.
  static std::set<std::string> articles_reviews_preset() { return {"Article", "Review"}; }

  bool valid(std::string* why = nullptr) const;
};

struct IngestReport {
  long long accepted = 0;
  long long rejected = 0;
  std::map<std::string, long long> reject_reasons;

  void reject(const std::string& reason) {
    ++rejected;
    ++reject_reasons[reason];
  }
  std::string to_json() const;
};

// Optional mapping of corpus country spellings to ISO codes, applied to the
// `countries` field at ingest. Two-letter tokens are taken as codes directly;
// anything else must match the alias table as a whole string.
class CountryAliasTable;
struct CountryCanonicalizer {
  const CountryAliasTable* table = nullptr;
  std::optional<std::string> canonicalize(std::string_view raw) const;
};

// Parses JSON Lines records into a Corpus. Malformed records are counted in
// the report and skipped; duplicate ids are rejected. I/O failure on the
// stream itself is the caller's problem (check stream state before calling).
Corpus ingest_corpus(std::istream& in, IngestReport& report,
                     const CountryCanonicalizer* canon = nullptr);

// Keeps publications passing every CorpusConfig predicate. When `report` is
// given, drops are counted under filtered_* reasons.
Corpus filter_corpus(const Corpus& corpus, const CorpusConfig& cfg,
                     IngestReport* report = nullptr);

// Canonical serialization: one JSON object per line, fixed key order, sorted
// countries. Byte-identical for equal corpora regardless of how they were
// ingested.
void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace funding
