#include "funding/attribution.hpp"

#include <algorithm>
#include <stdexcept>

#include "funding/parallel.hpp"

namespace funding {

std::vector<FundingInstance> expand_instances(const Publication& pub, const Corpus& corpus,
                                              const ResolutionTable& table) {
  std::vector<FundingInstance> out;
  // (funder id, grant) pairs seen so far in this publication.
  std::vector<std::pair<uint32_t, std::string>> seen;
  for (const auto& ack : pub.acks) {
    const std::string& name = corpus.funder_name(ack.funder);
    auto it = table.find(name);
    if (it == table.end())
      throw std::logic_error("funder missing from resolution table: " + name);
    const Assignment& label = it->second.assignment;
    if (label.kind == LabelKind::Excluded) continue;
    auto emit = [&](std::optional<std::string> grant) {
      std::pair<uint32_t, std::string> key{ack.funder, grant ? *grant : std::string()};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
      seen.push_back(std::move(key));
      out.push_back(FundingInstance{name, std::move(grant), label});
    };
    if (ack.grants.empty()) {
      emit(std::nullopt);
    } else {
      for (const auto& g : ack.grants) emit(g);
    }
  }
  return out;
}

LabelSpace LabelSpace::from_table(const ResolutionTable& table) {
  LabelSpace space;
  for (const auto& [name, rec] : table) {
    if (rec.assignment.countable()) space.labels.push_back(rec.assignment.label());
  }
  std::sort(space.labels.begin(), space.labels.end());
  space.labels.erase(std::unique(space.labels.begin(), space.labels.end()), space.labels.end());
  for (uint16_t i = 0; i < space.labels.size(); ++i) space.index.emplace(space.labels[i], i);
  return space;
}

std::vector<PubAttribution> compute_attributions(const Corpus& corpus,
                                                 const ResolutionTable& table,
                                                 const LabelSpace& labels, int threads) {
  // Assignment per interned funder id, so the per-publication loop stays
  // free of string lookups.
  struct FunderInfo {
    bool missing = true;  // interned but absent from the table
    bool excluded = false;
    bool countable = false;
    uint16_t label = 0;
  };
  std::vector<FunderInfo> info(corpus.funders.size());
  for (uint32_t id = 0; id < corpus.funders.size(); ++id) {
    auto it = table.find(corpus.funder_name(id));
    if (it == table.end()) continue;  // only fatal if a publication references it
    FunderInfo fi;
    fi.missing = false;
    fi.excluded = it->second.assignment.kind == LabelKind::Excluded;
    fi.countable = it->second.assignment.countable();
    if (fi.countable) fi.label = labels.id(it->second.assignment.label());
    info[id] = fi;
  }

  std::vector<PubAttribution> attrs(corpus.pubs.size());
  auto chunks = parallel_chunks<int>(
      corpus.pubs.size(), 4096, threads, [&](size_t, size_t begin, size_t end) {
        std::vector<std::pair<uint32_t, std::string>> seen;
        std::vector<std::pair<uint16_t, int32_t>> counts;
        for (size_t pi = begin; pi < end; ++pi) {
          const Publication& pub = corpus.pubs[pi];
          seen.clear();
          counts.clear();
          PubAttribution attr;
          for (const auto& ack : pub.acks) {
            const FunderInfo& fi = info[ack.funder];
            if (fi.missing)
              throw std::logic_error("funder missing from resolution table: " +
                                     corpus.funder_name(ack.funder));
            if (fi.excluded) continue;
            auto count_instance = [&](const std::string& grant) {
              std::pair<uint32_t, std::string> key{ack.funder, grant};
              if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
              seen.push_back(std::move(key));
              if (!fi.countable) {
                attr.has_noncountable = true;
                return;
              }
              ++attr.countable;
              auto it = std::find_if(counts.begin(), counts.end(),
                                     [&](const auto& c) { return c.first == fi.label; });
              if (it == counts.end()) {
                counts.emplace_back(fi.label, 1);
              } else {
                ++it->second;
              }
            };
            if (ack.grants.empty()) {
              count_instance(std::string());
            } else {
              for (const auto& g : ack.grants) count_instance(g);
            }
          }
          std::sort(counts.begin(), counts.end());
          attr.counts = counts;
          attrs[pi] = std::move(attr);
        }
        return 0;
      });
  (void)chunks;
  return attrs;
}

namespace {

std::map<int, std::vector<ShareRow>> shares_impl(const Corpus& corpus,
                                                 const std::vector<PubAttribution>& attrs,
                                                 const LabelSpace& labels,
                                                 bool international_only) {
  struct YearAgg {
    long long funded = 0;
    std::map<uint16_t, RationalSum> sums;
  };
  std::map<int, YearAgg> by_year;
  for (size_t pi = 0; pi < corpus.pubs.size(); ++pi) {
    const auto& attr = attrs[pi];
    if (!attr.funded()) continue;
    if (international_only && corpus.pubs[pi].countries.size() < 2) continue;
    auto& agg = by_year[corpus.pubs[pi].year];
    ++agg.funded;
    for (const auto& [label, n] : attr.counts) agg.sums[label].add(n, attr.countable);
  }
  std::map<int, std::vector<ShareRow>> out;
  for (auto& [year, agg] : by_year) {
    auto& rows = out[year];
    for (auto& [label, sum] : agg.sums) {
      ShareRow row;
      row.year = year;
      row.label = labels.labels[label];
      row.sum = std::move(sum);
      row.funded = agg.funded;
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const ShareRow& a, const ShareRow& b) { return a.label < b.label; });
  }
  return out;
}

}  // namespace

std::map<int, std::vector<ShareRow>> shares_by_year(const Corpus& corpus,
                                                    const std::vector<PubAttribution>& attrs,
                                                    const LabelSpace& labels) {
  return shares_impl(corpus, attrs, labels, false);
}

std::map<int, std::vector<ShareRow>> international_shares_by_year(
    const Corpus& corpus, const std::vector<PubAttribution>& attrs, const LabelSpace& labels) {
  return shares_impl(corpus, attrs, labels, true);
}

std::string subset_name(Subset s) {
  switch (s) {
    case Subset::All: return "all";
    case Subset::International: return "international";
    case Subset::Domestic: return "domestic";
  }
  return "all";
}

std::vector<IncidenceRow> funding_incidence_tables(const Corpus& corpus,
                                                   const std::vector<PubAttribution>& attrs) {
  std::map<std::pair<int, int>, IncidenceRow> cells;  // (year, subset) -> row
  auto bump = [&](int year, Subset subset, const PubAttribution& attr) {
    auto& row = cells[{year, static_cast<int>(subset)}];
    row.year = year;
    row.subset = subset;
    ++row.pubs;
    if (attr.funded()) {
      ++row.funded;
      if (attr.counts.size() == 1) {
        ++row.single_label;
      } else {
        ++row.multi_label;
      }
    }
  };
  for (size_t pi = 0; pi < corpus.pubs.size(); ++pi) {
    const Publication& pub = corpus.pubs[pi];
    bump(pub.year, Subset::All, attrs[pi]);
    bump(pub.year, pub.countries.size() >= 2 ? Subset::International : Subset::Domestic,
         attrs[pi]);
  }
  std::vector<IncidenceRow> out;
  out.reserve(cells.size());
  for (auto& [key, row] : cells) out.push_back(std::move(row));
  return out;
}

}  // namespace funding
