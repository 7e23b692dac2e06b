#include "funding/reliance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace funding {

RelianceNetwork build_network(const std::vector<ImpactRow>& impact_rows) {
  RelianceNetwork net;
  for (const auto& row : impact_rows) {
    if (row.scenario != Scenario::Funder || row.self) continue;
    if (row.removed <= 0 || row.m <= 0) continue;
    net.edges.push_back(RelianceEdge{row.funder, row.recipient, row.reduction().value()});
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const RelianceEdge& a, const RelianceEdge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return net;
}

std::string direction_rule_name(DirectionRule r) {
  switch (r) {
    case DirectionRule::Out: return "out";
    case DirectionRule::In: return "in";
    case DirectionRule::Either: return "either";
  }
  return "either";
}

double edge_significance(double p, long long k) {
  if (k <= 1) return 1.0;
  return std::pow(1.0 - p, static_cast<double>(k - 1));
}

std::vector<ScoredEdge> disparity_filter(const RelianceNetwork& network,
                                         const BackboneParams& params) {
  if (!params.valid()) throw std::invalid_argument("disparity_filter: alpha must be in (0,1)");

  struct NodeAgg {
    double strength = 0;
    long long degree = 0;
  };
  std::map<std::string, NodeAgg> out_agg, in_agg;
  for (const auto& e : network.edges) {
    auto& o = out_agg[e.source];
    o.strength += e.weight;
    ++o.degree;
    auto& i = in_agg[e.target];
    i.strength += e.weight;
    ++i.degree;
  }

  std::vector<ScoredEdge> scored;
  scored.reserve(network.edges.size());
  for (const auto& e : network.edges) {
    const NodeAgg& o = out_agg[e.source];
    const NodeAgg& i = in_agg[e.target];
    ScoredEdge se;
    se.edge = e;
    se.k_out = o.degree;
    se.k_in = i.degree;
    se.alpha_out = edge_significance(o.strength > 0 ? e.weight / o.strength : 0, o.degree);
    se.alpha_in = edge_significance(i.strength > 0 ? e.weight / i.strength : 0, i.degree);
    // A degree-1 neighborhood keeps its only edge; the test is undefined
    // at k = 1 and pruning would isolate leaves.
    bool keep_out = o.degree == 1 || se.alpha_out < params.alpha;
    bool keep_in = i.degree == 1 || se.alpha_in < params.alpha;
    switch (params.rule) {
      case DirectionRule::Out: se.kept = keep_out; break;
      case DirectionRule::In: se.kept = keep_in; break;
      case DirectionRule::Either: se.kept = keep_out || keep_in; break;
    }
    scored.push_back(std::move(se));
  }
  return scored;
}

std::map<std::string, std::string> top_funder_per_country(const RelianceNetwork& network) {
  std::map<std::string, std::pair<double, std::string>> best;  // recipient -> (w, funder)
  for (const auto& e : network.edges) {
    auto it = best.find(e.target);
    if (it == best.end() || e.weight > it->second.first ||
        (e.weight == it->second.first && e.source < it->second.second)) {
      best[e.target] = {e.weight, e.source};
    }
  }
  std::map<std::string, std::string> out;
  for (const auto& [recipient, w_funder] : best) out[recipient] = w_funder.second;
  return out;
}

}  // namespace funding
