#include "funding/artifacts.hpp"

#include <algorithm>
#include <sstream>

#include "funding/csv.hpp"

namespace funding {

std::string resolution_csv(const ResolutionTable& table) {
  std::ostringstream out;
  write_csv_row(out, {"norm_name", "frequency", "assignment", "method"});
  for (const auto& [name, rec] : table) {
    write_csv_row(out, {name, std::to_string(rec.frequency), rec.assignment.to_string(),
                        method_name(rec.method)});
  }
  return out.str();
}

std::optional<ResolutionTable> parse_resolution_csv(const std::string& path,
                                                    std::string* error) {
  auto rows = read_csv(path, {"norm_name", "frequency", "assignment", "method"}, error);
  if (!rows) return std::nullopt;
  ResolutionTable table;
  for (const auto& row : *rows) {
    FunderRecord rec;
    rec.norm_name = row[0];
    try {
      rec.frequency = std::stoll(row[1]);
    } catch (const std::exception&) {
      if (error) *error = path + ": bad frequency '" + row[1] + "'";
      return std::nullopt;
    }
    auto assignment = Assignment::parse(row[2]);
    auto method = parse_method(row[3]);
    if (!assignment || !method) {
      if (error) *error = path + ": bad assignment/method for '" + row[0] + "'";
      return std::nullopt;
    }
    rec.assignment = *assignment;
    rec.method = *method;
    table.emplace(rec.norm_name, std::move(rec));
  }
  return table;
}

std::string shares_csv(const std::map<int, std::vector<ShareRow>>& by_year) {
  std::ostringstream out;
  write_csv_row(out, {"year", "label", "F_c", "F"});
  for (const auto& [year, rows] : by_year) {
    for (const auto& row : rows) {
      write_csv_row(out, {std::to_string(year), row.label, fmt_g12(row.share()),
                          std::to_string(row.funded)});
    }
  }
  return out.str();
}

std::string incidence_csv(const std::vector<IncidenceRow>& rows) {
  std::ostringstream out;
  write_csv_row(out, {"year", "subset", "funded_frac", "single_country_frac",
                      "multi_country_frac"});
  for (const auto& row : rows) {
    write_csv_row(out, {std::to_string(row.year), subset_name(row.subset),
                        fmt_g12(row.funded_frac().value()), fmt_g12(row.single_frac().value()),
                        fmt_g12(row.multi_frac().value())});
  }
  return out.str();
}

std::string portfolio_csv(const std::map<std::string, CountryPortfolioStats>& stats) {
  std::ostringstream out;
  write_csv_row(out, {"country", "M_c", "I_c", "C_c_all", "C_c_funded", "frac_not_funded",
                      "frac_domestic", "frac_cofunded", "frac_foreign"});
  for (const auto& [country, s] : stats) {
    auto cf = s.exclusive_funded();
    write_csv_row(out, {country, std::to_string(s.m), fmt_g12(s.intensity().value()),
                        fmt_g12(s.exclusive_all().value()),
                        cf ? fmt_g12(cf->value()) : std::string(),
                        fmt_g12(s.class_fraction(PortfolioClass::NotFunded).value()),
                        fmt_g12(s.class_fraction(PortfolioClass::Domestic).value()),
                        fmt_g12(s.class_fraction(PortfolioClass::CoFunded).value()),
                        fmt_g12(s.class_fraction(PortfolioClass::Foreign).value())});
  }
  return out.str();
}

std::string continent_values_csv(
    const std::map<std::string, ContinentRollup>& rollups_by_metric) {
  std::ostringstream out;
  write_csv_row(out, {"metric", "continent", "country", "value"});
  for (const auto& [metric, rollup] : rollups_by_metric) {
    for (const auto& [continent, values] : rollup.values) {
      for (const auto& [country, value] : values) {
        write_csv_row(out, {metric, continent, country, fmt_g12(value)});
      }
    }
  }
  return out.str();
}

std::string continent_box_csv(const std::map<std::string, ContinentRollup>& rollups_by_metric) {
  std::ostringstream out;
  write_csv_row(out, {"metric", "continent", "n", "q1", "median", "q3", "whisker_lo",
                      "whisker_hi", "outliers"});
  for (const auto& [metric, rollup] : rollups_by_metric) {
    for (const auto& [continent, box] : rollup.by_continent) {
      std::string outliers;
      for (double v : box.outliers) {
        if (!outliers.empty()) outliers.push_back(';');
        outliers += fmt_g12(v);
      }
      write_csv_row(out, {metric, continent, std::to_string(box.n), fmt_g12(box.q1),
                          fmt_g12(box.median), fmt_g12(box.q3), fmt_g12(box.whisker_lo),
                          fmt_g12(box.whisker_hi), outliers});
    }
  }
  return out.str();
}

namespace {

std::string scenario_name(Scenario s) {
  return s == Scenario::AllInternational ? "all_international" : "funder";
}

}  // namespace

std::string impact_csv(const std::vector<ImpactRow>& rows) {
  std::ostringstream out;
  write_csv_row(out, {"scenario", "funder", "recipient", "reduction", "kl", "undefined_flag",
                      "self_flag"});
  for (const auto& row : rows) {
    write_csv_row(out, {scenario_name(row.scenario), row.funder, row.recipient,
                        fmt_g12(row.reduction().value()),
                        row.kl ? fmt_g12(*row.kl) : std::string(),
                        row.undefined() ? "1" : "0", row.self ? "1" : "0"});
  }
  return out.str();
}

std::optional<std::vector<ImpactCsvRow>> parse_impact_csv(const std::string& path,
                                                          std::string* error) {
  auto rows = read_csv(
      path, {"scenario", "funder", "recipient", "reduction", "kl", "undefined_flag", "self_flag"},
      error);
  if (!rows) return std::nullopt;
  std::vector<ImpactCsvRow> out;
  for (const auto& row : *rows) {
    ImpactCsvRow r;
    r.scenario = row[0];
    r.funder = row[1];
    r.recipient = row[2];
    try {
      r.reduction = std::stod(row[3]);
      if (!row[4].empty()) r.kl = std::stod(row[4]);
    } catch (const std::exception&) {
      if (error) *error = path + ": bad number in impact row";
      return std::nullopt;
    }
    r.undefined = row[5] == "1";
    r.self = row[6] == "1";
    out.push_back(std::move(r));
  }
  return out;
}

std::string network_csv(const RelianceNetwork& net) {
  std::ostringstream out;
  write_csv_row(out, {"source", "target", "weight"});
  for (const auto& e : net.edges) {
    write_csv_row(out, {e.source, e.target, fmt_g12(e.weight)});
  }
  return out.str();
}

std::optional<RelianceNetwork> parse_network_csv(const std::string& path, std::string* error) {
  auto rows = read_csv(path, {"source", "target", "weight"}, error);
  if (!rows) return std::nullopt;
  RelianceNetwork net;
  for (const auto& row : *rows) {
    try {
      net.edges.push_back(RelianceEdge{row[0], row[1], std::stod(row[2])});
    } catch (const std::exception&) {
      if (error) *error = path + ": bad weight '" + row[2] + "'";
      return std::nullopt;
    }
  }
  return net;
}

std::string backbone_csv(const std::vector<ScoredEdge>& edges) {
  std::ostringstream out;
  write_csv_row(out, {"source", "target", "weight", "alpha_out", "alpha_in", "kept"});
  for (const auto& se : edges) {
    write_csv_row(out, {se.edge.source, se.edge.target, fmt_g12(se.edge.weight),
                        fmt_g12(se.alpha_out), fmt_g12(se.alpha_in), se.kept ? "1" : "0"});
  }
  return out.str();
}

std::string top_funders_csv(const std::map<std::string, std::string>& top) {
  std::ostringstream out;
  write_csv_row(out, {"recipient", "top_funder"});
  for (const auto& [recipient, funder] : top) {
    write_csv_row(out, {recipient, funder});
  }
  return out.str();
}

RelianceNetwork build_network_from_csv_rows(const std::vector<ImpactCsvRow>& rows) {
  RelianceNetwork net;
  for (const auto& row : rows) {
    if (row.scenario != "funder" || row.self) continue;
    if (row.reduction <= 0) continue;
    net.edges.push_back(RelianceEdge{row.funder, row.recipient, row.reduction});
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const RelianceEdge& a, const RelianceEdge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return net;
}

}  // namespace funding
