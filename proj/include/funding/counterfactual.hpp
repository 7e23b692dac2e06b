#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "funding/attribution.hpp"
#include "funding/corpus.hpp"
#include "funding/portfolio.hpp"
#include "funding/rational.hpp"

namespace funding {

// True iff the publication acknowledges at least one countable funding label
// different from the focal country. Under EuMode::Domestic the EU label
// counts as the focal country for EU members.
bool is_internationally_funded(const PubAttribution& attr, const LabelSpace& labels,
                               const std::string& focal, EuMode eu_mode,
                               const std::set<std::string>& eu_members);

// Discipline -> publication count; exact profile proportions are count/total.
using Profile = std::map<std::string, long long>;

// D(P||Q) in nats over exact proportions, 0*ln(0/q) = 0. nullopt when P is
// empty. Throws std::logic_error on support violation (p > 0 where q = 0).
std::optional<double> kl_divergence(const Profile& counterfactual, const Profile& actual);

enum class Scenario : uint8_t { AllInternational, Funder };

struct ImpactRow {
  Scenario scenario = Scenario::AllInternational;
  std::string funder;     // empty for AllInternational
  std::string recipient;  // the country whose publications are counted
  long long m = 0;        // actual publications (full counting)
  long long removed = 0;
  Profile actual;
  Profile counterfactual;
  std::optional<double> kl;  // nullopt when the counterfactual set is empty
  bool self = false;         // Funder scenario row where funder == recipient

  Fraction reduction() const { return Fraction::of(removed, m == 0 ? 1 : m); }
  bool undefined() const { return m == 0 || !kl.has_value(); }
};

// Removes the focal country's internationally funded publications; unfunded
// publications are always retained.
ImpactRow remove_international(const Corpus& corpus, const std::vector<PubAttribution>& attrs,
                               const LabelSpace& labels, const std::string& focal,
                               EuMode eu_mode, const std::set<std::string>& eu_members);

// One row per author country in the corpus, sorted by code.
std::vector<ImpactRow> all_international_impacts(const Corpus& corpus,
                                                 const std::vector<PubAttribution>& attrs,
                                                 const LabelSpace& labels, EuMode eu_mode,
                                                 const std::set<std::string>& eu_members);

// Scenario: funder country c1 stops funding internationally. Drops every
// publication with an author country other than c1 that acknowledges funding
// labelled c1; reports the reduction and profile change for every recipient.
std::vector<ImpactRow> per_funder_impact(const Corpus& corpus,
                                         const std::vector<PubAttribution>& attrs,
                                         const LabelSpace& labels, const std::string& funder,
                                         EuMode eu_mode, const std::set<std::string>& eu_members);

// per_funder_impact for every funder label (all countries plus EU when
// present), rows ordered by (funder, recipient).
std::vector<ImpactRow> scenario_matrix(const Corpus& corpus,
                                       const std::vector<PubAttribution>& attrs,
                                       const LabelSpace& labels,
                                       const std::vector<std::string>& funders, EuMode eu_mode,
                                       const std::set<std::string>& eu_members, int threads = 1);

}  // namespace funding
