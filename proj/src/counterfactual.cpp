#include "funding/counterfactual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "funding/parallel.hpp"

namespace funding {

bool is_internationally_funded(const PubAttribution& attr, const LabelSpace& labels,
                               const std::string& focal, EuMode eu_mode,
                               const std::set<std::string>& eu_members) {
  bool eu_as_self = eu_mode == EuMode::Domestic && eu_members.contains(focal);
  for (const auto& [label_id, n] : attr.counts) {
    (void)n;
    const std::string& label = labels.labels[label_id];
    if (label == focal) continue;
    if (eu_as_self && label == "EU") continue;
    return true;
  }
  return false;
}

std::optional<double> kl_divergence(const Profile& counterfactual, const Profile& actual) {
  long long n_total = 0, m_total = 0;
  for (const auto& [disc, n] : counterfactual) n_total += n;
  for (const auto& [disc, n] : actual) m_total += n;
  if (n_total == 0) return std::nullopt;
  double d = 0.0;
  for (const auto& [disc, n] : counterfactual) {
    if (n == 0) continue;
    auto it = actual.find(disc);
    if (it == actual.end() || it->second == 0)
      throw std::logic_error("kl_divergence: counterfactual support outside actual profile");
    double p = static_cast<double>(n) / static_cast<double>(n_total);
    double q = static_cast<double>(it->second) / static_cast<double>(m_total);
    d += p * std::log(p / q);
  }
  return d;
}

ImpactRow remove_international(const Corpus& corpus, const std::vector<PubAttribution>& attrs,
                               const LabelSpace& labels, const std::string& focal,
                               EuMode eu_mode, const std::set<std::string>& eu_members) {
  ImpactRow row;
  row.scenario = Scenario::AllInternational;
  row.recipient = focal;
  for (size_t pi = 0; pi < corpus.pubs.size(); ++pi) {
    const Publication& pub = corpus.pubs[pi];
    bool is_author = std::any_of(pub.countries.begin(), pub.countries.end(),
                                 [&](uint16_t c) { return corpus.country(c) == focal; });
    if (!is_author) continue;
    ++row.m;
    const std::string& disc = corpus.discipline_name(pub.discipline);
    ++row.actual[disc];
    if (is_internationally_funded(attrs[pi], labels, focal, eu_mode, eu_members)) {
      ++row.removed;
    } else {
      ++row.counterfactual[disc];
    }
  }
  row.kl = row.m == 0 ? std::nullopt : kl_divergence(row.counterfactual, row.actual);
  return row;
}

std::vector<ImpactRow> all_international_impacts(const Corpus& corpus,
                                                 const std::vector<PubAttribution>& attrs,
                                                 const LabelSpace& labels, EuMode eu_mode,
                                                 const std::set<std::string>& eu_members) {
  std::set<std::string> countries;
  for (const auto& pub : corpus.pubs) {
    for (uint16_t c : pub.countries) countries.insert(corpus.country(c));
  }
  std::vector<ImpactRow> rows;
  rows.reserve(countries.size());
  for (const auto& c : countries)
    rows.push_back(remove_international(corpus, attrs, labels, c, eu_mode, eu_members));
  return rows;
}

std::vector<ImpactRow> per_funder_impact(const Corpus& corpus,
                                         const std::vector<PubAttribution>& attrs,
                                         const LabelSpace& labels, const std::string& funder,
                                         EuMode eu_mode, const std::set<std::string>& eu_members) {
  // The funder label set: EU folds into the funder country under
  // EuMode::Domestic so the scenario stays consistent with the focal-country
  // predicate above.
  bool eu_as_funder =
      eu_mode == EuMode::Domestic && funder != "EU" && eu_members.contains(funder);
  std::map<std::string, ImpactRow> by_recipient;
  for (size_t pi = 0; pi < corpus.pubs.size(); ++pi) {
    const Publication& pub = corpus.pubs[pi];
    const PubAttribution& attr = attrs[pi];
    bool funded_by_funder = false;
    for (const auto& [label_id, n] : attr.counts) {
      (void)n;
      const std::string& label = labels.labels[label_id];
      if (label == funder || (eu_as_funder && label == "EU")) {
        funded_by_funder = true;
        break;
      }
    }
    bool has_foreign_author =
        std::any_of(pub.countries.begin(), pub.countries.end(),
                    [&](uint16_t c) { return corpus.country(c) != funder; });
    bool removed = funded_by_funder && has_foreign_author;
    const std::string& disc = corpus.discipline_name(pub.discipline);
    for (uint16_t ci : pub.countries) {
      const std::string& code = corpus.country(ci);
      auto& row = by_recipient[code];
      row.scenario = Scenario::Funder;
      row.funder = funder;
      row.recipient = code;
      row.self = code == funder;
      ++row.m;
      ++row.actual[disc];
      if (removed) {
        ++row.removed;
      } else {
        ++row.counterfactual[disc];
      }
    }
  }
  std::vector<ImpactRow> rows;
  rows.reserve(by_recipient.size());
  for (auto& [code, row] : by_recipient) {
    row.kl = kl_divergence(row.counterfactual, row.actual);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ImpactRow> scenario_matrix(const Corpus& corpus,
                                       const std::vector<PubAttribution>& attrs,
                                       const LabelSpace& labels,
                                       const std::vector<std::string>& funders, EuMode eu_mode,
                                       const std::set<std::string>& eu_members, int threads) {
  auto chunks = parallel_chunks<std::vector<ImpactRow>>(
      funders.size(), 1, threads, [&](size_t, size_t begin, size_t end) {
        std::vector<ImpactRow> rows;
        for (size_t i = begin; i < end; ++i) {
          auto r = per_funder_impact(corpus, attrs, labels, funders[i], eu_mode, eu_members);
          rows.insert(rows.end(), std::make_move_iterator(r.begin()),
                      std::make_move_iterator(r.end()));
        }
        return rows;
      });
  std::vector<ImpactRow> out;
  for (auto& chunk : chunks)
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  return out;
}

}  // namespace funding
