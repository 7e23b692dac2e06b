#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "funding/corpus.hpp"
#include "funding/rational.hpp"
#include "funding/resolver.hpp"

namespace funding {

// One (funder, grant) acknowledgement unit. A funder without grant numbers
// yields exactly one instance with no grant id.
struct FundingInstance {
  std::string funder;
  std::optional<std::string> grant;
  Assignment label;
};

// Expanded, deduplicated instances for one publication. Excluded funders
// yield nothing; multi-nation and unresolved instances are present but do
// not count toward fractions. Throws std::logic_error if a funder is missing
// from the table.
std::vector<FundingInstance> expand_instances(const Publication& pub, const Corpus& corpus,
                                              const ResolutionTable& table);

// Countable funding labels (country codes and "EU"), sorted, with ids equal
// to sorted positions. Built from the resolution table, so ids are stable
// under record reordering.
struct LabelSpace {
  std::vector<std::string> labels;
  std::unordered_map<std::string, uint16_t> index;

  static LabelSpace from_table(const ResolutionTable& table);
  uint16_t id(const std::string& label) const { return index.at(label); }
};

// Per-publication fractional attribution: N_p countable instances and the
// per-label instance counts N_{c,p}. Fractions are N_{c,p} / N_p, exact.
struct PubAttribution {
  int32_t countable = 0;  // N_p
  bool has_noncountable = false;
  std::vector<std::pair<uint16_t, int32_t>> counts;  // (label id, N_{c,p}), sorted by id

  bool funded() const { return countable > 0; }
};

// Index-parallel to corpus.pubs.
std::vector<PubAttribution> compute_attributions(const Corpus& corpus,
                                                 const ResolutionTable& table,
                                                 const LabelSpace& labels, int threads = 1);

// Yearly country funding shares: F_c = (sum of f_{c,p}) / F with F the number
// of funded publications that year. One row per (year, label) with nonzero
// share, labels sorted.
struct ShareRow {
  int year = 0;
  std::string label;
  RationalSum sum;       // sum over p of f_{c,p}
  long long funded = 0;  // F for that year

  double share() const { return funded == 0 ? 0.0 : sum.value() / static_cast<double>(funded); }
};

std::map<int, std::vector<ShareRow>> shares_by_year(const Corpus& corpus,
                                                    const std::vector<PubAttribution>& attrs,
                                                    const LabelSpace& labels);

// Same, restricted to internationally coauthored publications.
std::map<int, std::vector<ShareRow>> international_shares_by_year(
    const Corpus& corpus, const std::vector<PubAttribution>& attrs, const LabelSpace& labels);

// Funding incidence per year and authorship subset: how many publications
// are funded at all, funded by exactly one label, funded by two or more.
enum class Subset : uint8_t { All, International, Domestic };
std::string subset_name(Subset s);

struct IncidenceRow {
  int year = 0;
  Subset subset = Subset::All;
  long long pubs = 0;
  long long funded = 0;
  long long single_label = 0;
  long long multi_label = 0;

  Fraction funded_frac() const { return Fraction::of(funded, pubs == 0 ? 1 : pubs); }
  Fraction single_frac() const { return Fraction::of(single_label, pubs == 0 ? 1 : pubs); }
  Fraction multi_frac() const { return Fraction::of(multi_label, pubs == 0 ? 1 : pubs); }
};

std::vector<IncidenceRow> funding_incidence_tables(const Corpus& corpus,
                                                   const std::vector<PubAttribution>& attrs);

}  // namespace funding
