#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "funding/attribution.hpp"
#include "funding/counterfactual.hpp"
#include "funding/portfolio.hpp"
#include "funding/reliance.hpp"
#include "funding/resolver.hpp"

namespace funding {

// CSV serializations of the stage artifacts. Writers emit a header row and
// deterministic row order; floats are formatted with fmt_g12.

std::string resolution_csv(const ResolutionTable& table);
std::optional<ResolutionTable> parse_resolution_csv(const std::string& path, std::string* error);

std::string shares_csv(const std::map<int, std::vector<ShareRow>>& by_year);
std::string incidence_csv(const std::vector<IncidenceRow>& rows);

std::string portfolio_csv(const std::map<std::string, CountryPortfolioStats>& stats);
std::string continent_values_csv(
    const std::map<std::string, ContinentRollup>& rollups_by_metric);
std::string continent_box_csv(const std::map<std::string, ContinentRollup>& rollups_by_metric);

std::string impact_csv(const std::vector<ImpactRow>& rows);
struct ImpactCsvRow {
  std::string scenario;
  std::string funder;
  std::string recipient;
  double reduction = 0;
  std::optional<double> kl;
  bool undefined = false;
  bool self = false;
};
std::optional<std::vector<ImpactCsvRow>> parse_impact_csv(const std::string& path,
                                                          std::string* error);

std::string network_csv(const RelianceNetwork& net);
std::optional<RelianceNetwork> parse_network_csv(const std::string& path, std::string* error);

std::string backbone_csv(const std::vector<ScoredEdge>& edges);

std::string top_funders_csv(const std::map<std::string, std::string>& top);

// Reliance network from funder-scenario impact rows parsed back off disk.
RelianceNetwork build_network_from_csv_rows(const std::vector<ImpactCsvRow>& rows);

}  // namespace funding
