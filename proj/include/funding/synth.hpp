#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "funding/resolver.hpp"

namespace funding {

enum class NameStyle : uint8_t { CountryToken, EuToken, MultiToken, Opaque };

// Synthetic corpora target resolver and metric code paths, not realism.
// Generation is a pure function of the spec: equal specs give byte-identical
// output.
struct SynthSpec {
  uint64_t seed = 1;
  int n_countries = 20;
  int n_funders = 120;
  int n_pubs = 10000;
  double p_funded = 0.65;
  double p_international_coauthor = 0.30;
  double p_foreign_funding = 0.25;
  double p_messy = 0.20;    // raw mentions with scrambled case/whitespace
  double p_no_grant = 0.30  ;
  std::set<NameStyle> styles = {NameStyle::CountryToken, NameStyle::EuToken,
                                NameStyle::MultiToken, NameStyle::Opaque};
  int year_min = 2009;
  int year_max = 2018;
  bool emit_noise = false;  // also emit records ingest/filtering must drop

  bool valid(std::string* why = nullptr) const;
};

struct TruthRow {
  Assignment assignment;
  Method method = Method::AuthorshipMajority;
};

struct SynthResult {
  std::string corpus_jsonl;
  std::string curated_tsv;
  std::string truth_tsv;  // norm_name <TAB> assignment <TAB> method
  std::map<std::string, TruthRow> truth;
  long long noise_records = 0;  // records that ingest+filter must reject
};

// Throws std::invalid_argument on an infeasible spec.
SynthResult generate(const SynthSpec& spec);

}  // namespace funding
