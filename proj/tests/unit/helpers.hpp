#pragma once

#include <random>
#include <string>
#include <vector>

#include "funding/attribution.hpp"
#include "funding/corpus.hpp"
#include "funding/resolver.hpp"

namespace testutil {

struct AckSpec {
  std::string name;
  std::vector<std::string> grants;
};

struct PubSpec {
  std::string id;
  int year = 2015;
  std::string doc_type = "Article";
  std::string discipline = "Physics";
  std::vector<std::string> countries;
  std::vector<AckSpec> acks;
};

inline funding::Corpus make_corpus(const std::vector<PubSpec>& specs) {
  funding::Corpus corpus;
  for (const auto& spec : specs) {
    funding::Publication pub;
    pub.id = spec.id;
    pub.year = spec.year;
    pub.doc_type = static_cast<uint16_t>(corpus.doc_types.intern(spec.doc_type));
    pub.discipline = static_cast<uint16_t>(corpus.disciplines.intern(spec.discipline));
    std::vector<std::string> codes = spec.countries;
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (const auto& c : codes)
      pub.countries.push_back(static_cast<uint16_t>(corpus.countries.intern(c)));
    for (const auto& ack : spec.acks) {
      funding::FunderAck a;
      a.raw_name = ack.name;
      a.funder = corpus.funders.intern(funding::normalize_name(ack.name));
      a.grants = ack.grants;
      pub.acks.push_back(std::move(a));
    }
    corpus.pubs.push_back(std::move(pub));
  }
  return corpus;
}

// Resolution table straight from (name, assignment) pairs; frequency 2 so
// nothing trips the frequency filter.
inline funding::ResolutionTable make_table(
    const std::vector<std::pair<std::string, funding::Assignment>>& entries) {
  funding::ResolutionTable table;
  for (const auto& [name, assignment] : entries) {
    funding::FunderRecord rec;
    rec.norm_name = funding::normalize_name(name);
    rec.frequency = 2;
    rec.assignment = assignment;
    rec.method = assignment.kind == funding::LabelKind::Excluded
                     ? funding::Method::FrequencyExcluded
                     : funding::Method::NamePattern;
    table.emplace(rec.norm_name, std::move(rec));
  }
  return table;
}

// Everything attribution-side tests need in one call.
struct Attributed {
  funding::LabelSpace labels;
  std::vector<funding::PubAttribution> attrs;
};

inline Attributed attribute(const funding::Corpus& corpus,
                            const funding::ResolutionTable& table) {
  Attributed out;
  out.labels = funding::LabelSpace::from_table(table);
  out.attrs = funding::compute_attributions(corpus, table, out.labels);
  return out;
}

}  // namespace testutil
