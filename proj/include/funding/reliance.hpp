#pragma once

#include <map>
#include <string>
#include <vector>

#include "funding/counterfactual.hpp"

namespace funding {

struct RelianceEdge {
  std::string source;  // funder country
  std::string target;  // recipient country
  double weight = 0;   // target's reduction fraction if source stops funding
};

struct RelianceNetwork {
  std::vector<RelianceEdge> edges;  // sorted by (source, target); weights > 0
};

// Funder-scenario impact rows -> directed weighted network. Self rows and
// zero-impact pairs are dropped.
RelianceNetwork build_network(const std::vector<ImpactRow>& impact_rows);

enum class DirectionRule : uint8_t { Out, In, Either };
std::string direction_rule_name(DirectionRule r);

struct BackboneParams {
  double alpha = 0.05;
  DirectionRule rule = DirectionRule::Either;

  bool valid() const { return alpha > 0.0 && alpha < 1.0; }
};

// Disparity-filter significance of an edge carrying fraction p of a
// neighborhood of size k: (1 - p)^(k - 1).
double edge_significance(double p, long long k);

struct ScoredEdge {
  RelianceEdge edge;
  double alpha_out = 1.0;  // significance in the source's out-neighborhood
  double alpha_in = 1.0;   // significance in the target's in-neighborhood
  long long k_out = 0;
  long long k_in = 0;
  bool kept = false;
};

// Scores every edge against its neighborhoods and applies the keep rule:
// significant in at least one qualifying neighborhood, with degree-1
// neighborhoods keeping their single edge.
std::vector<ScoredEdge> disparity_filter(const RelianceNetwork& network,
                                         const BackboneParams& params);

// Strongest in-edge per recipient; ties go to the lexicographically smallest
// funder code.
std::map<std::string, std::string> top_funder_per_country(const RelianceNetwork& network);

}  // namespace funding
