// fundnet: batch pipeline computing national funding metrics from funding
// acknowledgements. Subcommands map to pipeline stages; intermediate
// artifacts live in the output directory next to a run manifest so any stage
// can be rerun or resumed independently.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "funding/artifacts.hpp"
#include "funding/attribution.hpp"
#include "funding/config.hpp"
#include "funding/corpus.hpp"
#include "funding/counterfactual.hpp"
#include "funding/country_data.hpp"
#include "funding/csv.hpp"
#include "funding/manifest.hpp"
#include "funding/oracle.hpp"
#include "funding/portfolio.hpp"
#include "funding/reliance.hpp"
#include "funding/resolver.hpp"
#include "funding/synth.hpp"

namespace fs = std::filesystem;
using namespace funding;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kDataError = 3;
constexpr int kDependencyError = 4;

struct CliFlags {
  std::string config_path;
  std::string input;
  std::string out_dir;
  std::string eu_mode;
  std::string curated;
  std::string aliases;
  std::string continents;
  std::string eu_members;
  int threads = 0;       // 0 = not set
  double alpha = -1.0;   // < 0 = not set
};

int fail(int code, const std::string& msg) {
  std::cerr << "fundnet: " << msg << "\n";
  return code;
}

struct Ctx {
  PipelineConfig cfg;
  fs::path out;
  RunManifest manifest;
};

// Config layering: defaults <- file <- environment <- flags.
int make_ctx(const CliFlags& flags, Ctx& ctx) {
  std::string error;
  if (!flags.config_path.empty()) {
    auto cfg = load_config_file(flags.config_path, &error);
    if (!cfg) return fail(kConfigError, error);
    ctx.cfg = *cfg;
  }
  if (!apply_env_overrides(ctx.cfg, &error)) return fail(kConfigError, error);
  if (!flags.out_dir.empty()) ctx.cfg.out_dir = flags.out_dir;
  if (flags.threads > 0) ctx.cfg.threads = flags.threads;
  if (flags.alpha >= 0) {
    if (!apply_config_key(ctx.cfg, "alpha", std::to_string(flags.alpha), &error))
      return fail(kConfigError, error);
    ctx.cfg.backbone.alpha = flags.alpha;
  }
  if (!flags.eu_mode.empty()) {
    if (!apply_config_key(ctx.cfg, "eu_mode", flags.eu_mode, &error))
      return fail(kConfigError, error);
  }
  if (!flags.curated.empty()) ctx.cfg.curated_path = flags.curated;
  if (!flags.aliases.empty()) ctx.cfg.aliases_path = flags.aliases;
  if (!flags.continents.empty()) ctx.cfg.continents_path = flags.continents;
  if (!flags.eu_members.empty()) ctx.cfg.eu_members_path = flags.eu_members;
  std::string why;
  if (!ctx.cfg.corpus.valid(&why)) return fail(kConfigError, why);
  ctx.out = ctx.cfg.out_dir;
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec) return fail(kConfigError, "cannot create out dir: " + ctx.out.string());
  if (auto m = RunManifest::load((ctx.out / "manifest.json").string(), nullptr)) {
    ctx.manifest = *m;
  }
  ctx.manifest.config_hash = ctx.cfg.hash();
  ctx.manifest.tool_version = kToolVersion;
  return kOk;
}

int require_artifact(const Ctx& ctx, const std::string& file, const std::string& producer) {
  if (!fs::exists(ctx.out / file)) {
    return fail(kDependencyError,
                "missing " + (ctx.out / file).string() + "; run `fundnet " + producer +
                    "` first");
  }
  return kOk;
}

int save_stage(Ctx& ctx, const std::string& stage,
               const std::map<std::string, std::string>& input_files,
               const std::map<std::string, std::string>& output_files) {
  RunManifest::Stage entry;
  std::string error;
  for (const auto& [name, path] : input_files) {
    auto digest = sha256_file(path, &error);
    if (!digest) return fail(kDataError, error);
    entry.inputs[name] = *digest;
  }
  for (const auto& [name, path] : output_files) {
    auto digest = sha256_file(path, &error);
    if (!digest) return fail(kDataError, error);
    entry.outputs[name] = *digest;
  }
  ctx.manifest.stages[stage] = std::move(entry);
  if (!ctx.manifest.save((ctx.out / "manifest.json").string(), &error))
    return fail(kDataError, error);
  return kOk;
}

// Loads alias/curated/continent/EU tables per config, builtin fallbacks.
struct Tables {
  CountryAliasTable aliases = CountryAliasTable::builtin();
  CuratedMap curated;
  std::map<std::string, std::string> continents = builtin_continent_map();
  std::set<std::string> eu_members = builtin_eu_members();
};

int load_tables(const Ctx& ctx, Tables& tables) {
  std::string error;
  if (!ctx.cfg.aliases_path.empty()) {
    auto t = CountryAliasTable::load_tsv(ctx.cfg.aliases_path, &error);
    if (!t) return fail(kConfigError, error);
    tables.aliases = std::move(*t);
  }
  if (!ctx.cfg.curated_path.empty()) {
    auto c = CuratedMap::load_tsv(ctx.cfg.curated_path, &error);
    if (!c) return fail(kConfigError, error);
    tables.curated = std::move(*c);
  }
  if (!ctx.cfg.continents_path.empty()) {
    auto c = load_continent_map(ctx.cfg.continents_path, &error);
    if (!c) return fail(kConfigError, error);
    tables.continents = std::move(*c);
  }
  if (!ctx.cfg.eu_members_path.empty()) {
    auto c = load_code_set(ctx.cfg.eu_members_path, &error);
    if (!c) return fail(kConfigError, error);
    tables.eu_members = std::move(*c);
  }
  if (!ctx.cfg.corpus.eu_members.empty()) tables.eu_members = ctx.cfg.corpus.eu_members;
  return kOk;
}

int load_norm_corpus(const Ctx& ctx, Corpus& corpus) {
  std::ifstream in(ctx.out / "corpus.norm.jsonl");
  if (!in) return fail(kDataError, "cannot open corpus.norm.jsonl");
  IngestReport report;
  corpus = ingest_corpus(in, report);
  if (report.rejected > 0)
    return fail(kDataError, "corpus.norm.jsonl is not canonical (" +
                                std::to_string(report.rejected) + " bad records)");
  return kOk;
}

int load_resolution(const Ctx& ctx, ResolutionTable& table) {
  std::string error;
  auto t = parse_resolution_csv((ctx.out / "resolution.csv").string(), &error);
  if (!t) return fail(kDataError, error);
  table = std::move(*t);
  return kOk;
}

// ---- stages -------------------------------------------------------------

int cmd_ingest(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (flags.input.empty()) return fail(kConfigError, "ingest requires --input <corpus.jsonl>");
  Tables tables;
  if (int rc = load_tables(ctx, tables)) return rc;
  std::ifstream in(flags.input, std::ios::binary);
  if (!in) return fail(kDataError, "cannot open input: " + flags.input);

  IngestReport report;
  CountryCanonicalizer canon{&tables.aliases};
  Corpus raw = ingest_corpus(in, report, &canon);
  Corpus corpus = filter_corpus(raw, ctx.cfg.corpus, &report);

  std::string error;
  bool ok = write_file_atomic_stream(
      (ctx.out / "corpus.norm.jsonl").string(),
      [&](std::ostream& out) { write_corpus_jsonl(corpus, out); }, &error);
  if (!ok) return fail(kDataError, error);
  if (!write_file_atomic((ctx.out / "ingest_report.json").string(), report.to_json() + "\n",
                         &error))
    return fail(kDataError, error);

  std::cout << "ingest: accepted " << report.accepted << ", rejected " << report.rejected
            << "\n";
  return save_stage(ctx, "ingest", {{"input", flags.input}},
                    {{"corpus.norm.jsonl", (ctx.out / "corpus.norm.jsonl").string()},
                     {"ingest_report.json", (ctx.out / "ingest_report.json").string()}});
}

int cmd_resolve(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (int rc = require_artifact(ctx, "corpus.norm.jsonl", "ingest")) return rc;
  Tables tables;
  if (int rc = load_tables(ctx, tables)) return rc;
  Corpus corpus;
  if (int rc = load_norm_corpus(ctx, corpus)) return rc;

  ResolutionResult result = resolve_all(corpus, tables.curated, tables.aliases, ctx.cfg.corpus);

  std::string error;
  if (!write_file_atomic((ctx.out / "resolution.csv").string(), resolution_csv(result.table),
                         &error))
    return fail(kDataError, error);
  if (!write_file_atomic((ctx.out / "resolution_report.json").string(),
                         result.report.to_json() + "\n", &error))
    return fail(kDataError, error);

  std::cout << "resolve: " << result.report.total_names << " names, "
            << result.report.retained_names << " retained\n";
  std::map<std::string, std::string> inputs = {
      {"corpus.norm.jsonl", (ctx.out / "corpus.norm.jsonl").string()}};
  if (!ctx.cfg.curated_path.empty()) inputs["curated"] = ctx.cfg.curated_path;
  if (!ctx.cfg.aliases_path.empty()) inputs["aliases"] = ctx.cfg.aliases_path;
  return save_stage(ctx, "resolve", inputs,
                    {{"resolution.csv", (ctx.out / "resolution.csv").string()},
                     {"resolution_report.json", (ctx.out / "resolution_report.json").string()}});
}

int cmd_attribute(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (int rc = require_artifact(ctx, "corpus.norm.jsonl", "ingest")) return rc;
  if (int rc = require_artifact(ctx, "resolution.csv", "resolve")) return rc;
  Corpus corpus;
  if (int rc = load_norm_corpus(ctx, corpus)) return rc;
  ResolutionTable table;
  if (int rc = load_resolution(ctx, table)) return rc;

  try {
    LabelSpace labels = LabelSpace::from_table(table);
    auto attrs = compute_attributions(corpus, table, labels, ctx.cfg.threads);
    auto shares = shares_by_year(corpus, attrs, labels);
    auto intl = international_shares_by_year(corpus, attrs, labels);
    auto incidence = funding_incidence_tables(corpus, attrs);

    std::string error;
    if (!write_file_atomic((ctx.out / "funding_shares.csv").string(), shares_csv(shares),
                           &error))
      return fail(kDataError, error);
    if (!write_file_atomic((ctx.out / "international_shares.csv").string(), shares_csv(intl),
                           &error))
      return fail(kDataError, error);
    if (!write_file_atomic((ctx.out / "incidence.csv").string(), incidence_csv(incidence),
                           &error))
      return fail(kDataError, error);
  } catch (const std::exception& e) {
    return fail(kDataError, e.what());
  }

  std::cout << "attribute: wrote funding_shares.csv, international_shares.csv, incidence.csv\n";
  return save_stage(
      ctx, "attribute",
      {{"corpus.norm.jsonl", (ctx.out / "corpus.norm.jsonl").string()},
       {"resolution.csv", (ctx.out / "resolution.csv").string()}},
      {{"funding_shares.csv", (ctx.out / "funding_shares.csv").string()},
       {"international_shares.csv", (ctx.out / "international_shares.csv").string()},
       {"incidence.csv", (ctx.out / "incidence.csv").string()}});
}

int cmd_portfolio(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (int rc = require_artifact(ctx, "corpus.norm.jsonl", "ingest")) return rc;
  if (int rc = require_artifact(ctx, "resolution.csv", "resolve")) return rc;
  Tables tables;
  if (int rc = load_tables(ctx, tables)) return rc;
  Corpus corpus;
  if (int rc = load_norm_corpus(ctx, corpus)) return rc;
  ResolutionTable table;
  if (int rc = load_resolution(ctx, table)) return rc;

  try {
    LabelSpace labels = LabelSpace::from_table(table);
    auto attrs = compute_attributions(corpus, table, labels, ctx.cfg.threads);
    auto stats = all_portfolio_stats(corpus, attrs, labels, ctx.cfg.eu_mode, tables.eu_members);

    std::map<std::string, double> intensity, exclusive_all, exclusive_funded;
    for (const auto& [country, s] : stats) {
      intensity[country] = s.intensity().value();
      exclusive_all[country] = s.exclusive_all().value();
      if (auto cf = s.exclusive_funded()) exclusive_funded[country] = cf->value();
    }
    std::map<std::string, ContinentRollup> rollups;
    rollups["intensity"] = continent_rollup(intensity, tables.continents);
    rollups["exclusive_all"] = continent_rollup(exclusive_all, tables.continents);
    rollups["exclusive_funded"] = continent_rollup(exclusive_funded, tables.continents);
    for (const auto& c : rollups["intensity"].unmapped)
      std::cerr << "fundnet: no continent for " << c << "; excluded from rollup\n";

    std::string error;
    if (!write_file_atomic((ctx.out / "portfolio.csv").string(), portfolio_csv(stats), &error))
      return fail(kDataError, error);
    if (!write_file_atomic((ctx.out / "portfolio_continent_values.csv").string(),
                           continent_values_csv(rollups), &error))
      return fail(kDataError, error);
    if (!write_file_atomic((ctx.out / "portfolio_continents.csv").string(),
                           continent_box_csv(rollups), &error))
      return fail(kDataError, error);
  } catch (const std::exception& e) {
    return fail(kDataError, e.what());
  }

  std::cout << "portfolio: wrote portfolio.csv and continent rollups\n";
  return save_stage(
      ctx, "portfolio",
      {{"corpus.norm.jsonl", (ctx.out / "corpus.norm.jsonl").string()},
       {"resolution.csv", (ctx.out / "resolution.csv").string()}},
      {{"portfolio.csv", (ctx.out / "portfolio.csv").string()},
       {"portfolio_continent_values.csv",
        (ctx.out / "portfolio_continent_values.csv").string()},
       {"portfolio_continents.csv", (ctx.out / "portfolio_continents.csv").string()}});
}

int cmd_counterfactual(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (int rc = require_artifact(ctx, "corpus.norm.jsonl", "ingest")) return rc;
  if (int rc = require_artifact(ctx, "resolution.csv", "resolve")) return rc;
  Tables tables;
  if (int rc = load_tables(ctx, tables)) return rc;
  Corpus corpus;
  if (int rc = load_norm_corpus(ctx, corpus)) return rc;
  ResolutionTable table;
  if (int rc = load_resolution(ctx, table)) return rc;

  try {
    LabelSpace labels = LabelSpace::from_table(table);
    auto attrs = compute_attributions(corpus, table, labels, ctx.cfg.threads);
    auto rows =
        all_international_impacts(corpus, attrs, labels, ctx.cfg.eu_mode, tables.eu_members);
    auto matrix = scenario_matrix(corpus, attrs, labels, labels.labels, ctx.cfg.eu_mode,
                                  tables.eu_members, ctx.cfg.threads);
    rows.insert(rows.end(), std::make_move_iterator(matrix.begin()),
                std::make_move_iterator(matrix.end()));

    std::string error;
    if (!write_file_atomic((ctx.out / "impact.csv").string(), impact_csv(rows), &error))
      return fail(kDataError, error);
  } catch (const std::exception& e) {
    return fail(kDataError, e.what());
  }

  std::cout << "counterfactual: wrote impact.csv\n";
  return save_stage(ctx, "counterfactual",
                    {{"corpus.norm.jsonl", (ctx.out / "corpus.norm.jsonl").string()},
                     {"resolution.csv", (ctx.out / "resolution.csv").string()}},
                    {{"impact.csv", (ctx.out / "impact.csv").string()}});
}

int cmd_network(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (int rc = require_artifact(ctx, "impact.csv", "counterfactual")) return rc;
  std::string error;
  auto rows = parse_impact_csv((ctx.out / "impact.csv").string(), &error);
  if (!rows) return fail(kDataError, error);
  RelianceNetwork net = build_network_from_csv_rows(*rows);
  if (!write_file_atomic((ctx.out / "network.csv").string(), network_csv(net), &error))
    return fail(kDataError, error);
  std::cout << "network: " << net.edges.size() << " edges\n";
  return save_stage(ctx, "network", {{"impact.csv", (ctx.out / "impact.csv").string()}},
                    {{"network.csv", (ctx.out / "network.csv").string()}});
}

int cmd_backbone(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  if (int rc = require_artifact(ctx, "network.csv", "network")) return rc;
  std::string error;
  auto net = parse_network_csv((ctx.out / "network.csv").string(), &error);
  if (!net) return fail(kDataError, error);
  std::vector<ScoredEdge> scored;
  try {
    scored = disparity_filter(*net, ctx.cfg.backbone);
  } catch (const std::exception& e) {
    return fail(kConfigError, e.what());
  }
  if (!write_file_atomic((ctx.out / "backbone.csv").string(), backbone_csv(scored), &error))
    return fail(kDataError, error);
  long long kept = 0;
  for (const auto& se : scored) kept += se.kept ? 1 : 0;
  std::cout << "backbone: kept " << kept << " of " << scored.size() << " edges\n";
  return save_stage(ctx, "backbone", {{"network.csv", (ctx.out / "network.csv").string()}},
                    {{"backbone.csv", (ctx.out / "backbone.csv").string()}});
}

int cmd_report(const CliFlags& flags) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;
  for (const auto& [file, producer] :
       std::vector<std::pair<std::string, std::string>>{{"funding_shares.csv", "attribute"},
                                                        {"incidence.csv", "attribute"},
                                                        {"international_shares.csv", "attribute"},
                                                        {"portfolio.csv", "portfolio"},
                                                        {"impact.csv", "counterfactual"},
                                                        {"network.csv", "network"},
                                                        {"backbone.csv", "backbone"}}) {
    if (int rc = require_artifact(ctx, file, producer)) return rc;
  }
  Tables tables;
  if (int rc = load_tables(ctx, tables)) return rc;

  fs::path rep = ctx.out / "report";
  std::error_code ec;
  fs::create_directories(rep, ec);
  if (ec) return fail(kDataError, "cannot create report dir");

  std::string error;
  auto copy_to = [&](const std::string& src, const std::string& dst) {
    std::ifstream in(ctx.out / src, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return write_file_atomic((rep / dst).string(), buf.str(), &error);
  };
  if (!copy_to("funding_shares.csv", "funding_shares.csv")) return fail(kDataError, error);
  if (!copy_to("incidence.csv", "incidence.csv")) return fail(kDataError, error);
  if (!copy_to("international_shares.csv", "international_shares.csv"))
    return fail(kDataError, error);
  if (!copy_to("portfolio.csv", "portfolio.csv")) return fail(kDataError, error);
  if (!copy_to("portfolio_continent_values.csv", "portfolio_continent_values.csv"))
    return fail(kDataError, error);
  if (!copy_to("portfolio_continents.csv", "portfolio_continent_box.csv"))
    return fail(kDataError, error);
  if (!copy_to("network.csv", "network.csv")) return fail(kDataError, error);
  if (!copy_to("backbone.csv", "backbone.csv")) return fail(kDataError, error);

  // Continent-group funding shares; EU label and EU members fold into one
  // EU-Members group.
  {
    auto rows = read_csv((ctx.out / "funding_shares.csv").string(),
                         {"year", "label", "F_c", "F"}, &error);
    if (!rows) return fail(kDataError, error);
    std::map<std::pair<int, std::string>, double> group_share;
    for (const auto& row : *rows) {
      int year = std::stoi(row[0]);
      const std::string& label = row[1];
      double share = std::stod(row[2]);
      std::string group;
      if (label == "EU" || tables.eu_members.contains(label)) {
        group = "EU-Members";
      } else if (auto it = tables.continents.find(label); it != tables.continents.end()) {
        group = it->second;
      } else {
        group = "Other";
      }
      group_share[{year, group}] += share;
    }
    std::ostringstream out;
    write_csv_row(out, {"year", "group", "share"});
    for (const auto& [key, share] : group_share) {
      write_csv_row(out, {std::to_string(key.first), key.second, fmt_g12(share)});
    }
    if (!write_file_atomic((rep / "continent_shares.csv").string(), out.str(), &error))
      return fail(kDataError, error);
  }

  // All-international rows plus per-continent box summaries.
  {
    auto rows = parse_impact_csv((ctx.out / "impact.csv").string(), &error);
    if (!rows) return fail(kDataError, error);
    std::ostringstream out;
    write_csv_row(out, {"recipient", "reduction", "kl", "undefined_flag"});
    std::map<std::string, double> reductions, kls;
    std::ostringstream matrix;
    write_csv_row(matrix, {"funder", "recipient", "reduction", "kl", "undefined_flag",
                         "self_flag"});
    for (const auto& row : *rows) {
      if (row.scenario == "all_international") {
        write_csv_row(out, {row.recipient, fmt_g12(row.reduction),
                            row.kl ? fmt_g12(*row.kl) : std::string(),
                            row.undefined ? "1" : "0"});
        reductions[row.recipient] = row.reduction;
        if (row.kl) kls[row.recipient] = *row.kl;
      } else {
        write_csv_row(matrix, {row.funder, row.recipient, fmt_g12(row.reduction),
                             row.kl ? fmt_g12(*row.kl) : std::string(),
                             row.undefined ? "1" : "0", row.self ? "1" : "0"});
      }
    }
    if (!write_file_atomic((rep / "reduction_kl.csv").string(), out.str(), &error))
      return fail(kDataError, error);
    if (!write_file_atomic((rep / "impact_matrix.csv").string(), matrix.str(), &error))
      return fail(kDataError, error);

    std::map<std::string, ContinentRollup> rollups;
    rollups["reduction"] = continent_rollup(reductions, tables.continents);
    rollups["kl"] = continent_rollup(kls, tables.continents);
    if (!write_file_atomic((rep / "reduction_continent_box.csv").string(),
                           continent_box_csv(rollups), &error))
      return fail(kDataError, error);
  }

  // Strongest funder per recipient, from the full network.
  {
    auto net = parse_network_csv((ctx.out / "network.csv").string(), &error);
    if (!net) return fail(kDataError, error);
    auto top = top_funder_per_country(*net);
    if (!write_file_atomic((rep / "top_funders.csv").string(), top_funders_csv(top),
                           &error))
      return fail(kDataError, error);
  }

  std::cout << "report: wrote " << rep.string() << "\n";
  std::map<std::string, std::string> outputs;
  for (const auto& entry : fs::directory_iterator(rep)) {
    outputs[entry.path().filename().string()] = entry.path().string();
  }
  return save_stage(ctx, "report", {}, outputs);
}

struct SynthFlags {
  uint64_t seed = 1;
  int pubs = 10000;
  int funders = 120;
  int countries = 20;
  double p_funded = 0.65;
  double p_international = 0.30;
  double p_foreign = 0.25;
  double p_messy = 0.20;
  std::string styles = "country,eu,multi,opaque";
  bool emit_noise = false;
  bool with_oracle = false;
};

int cmd_synth(const CliFlags& flags, const SynthFlags& sf) {
  Ctx ctx;
  if (int rc = make_ctx(flags, ctx)) return rc;

  SynthSpec spec;
  spec.seed = sf.seed;
  spec.n_pubs = sf.pubs;
  spec.n_funders = sf.funders;
  spec.n_countries = sf.countries;
  spec.p_funded = sf.p_funded;
  spec.p_international_coauthor = sf.p_international;
  spec.p_foreign_funding = sf.p_foreign;
  spec.p_messy = sf.p_messy;
  spec.emit_noise = sf.emit_noise;
  spec.styles.clear();
  std::istringstream styles(sf.styles);
  std::string item;
  while (std::getline(styles, item, ',')) {
    if (item == "country") spec.styles.insert(NameStyle::CountryToken);
    else if (item == "eu") spec.styles.insert(NameStyle::EuToken);
    else if (item == "multi") spec.styles.insert(NameStyle::MultiToken);
    else if (item == "opaque") spec.styles.insert(NameStyle::Opaque);
    else if (!item.empty()) return fail(kConfigError, "unknown style: " + item);
  }

  SynthResult result;
  try {
    result = generate(spec);
  } catch (const std::exception& e) {
    return fail(kConfigError, e.what());
  }

  std::string error;
  if (!write_file_atomic((ctx.out / "corpus.jsonl").string(), result.corpus_jsonl, &error))
    return fail(kDataError, error);
  if (!write_file_atomic((ctx.out / "truth_funders.tsv").string(), result.truth_tsv, &error))
    return fail(kDataError, error);
  if (!write_file_atomic((ctx.out / "curated.tsv").string(), result.curated_tsv, &error))
    return fail(kDataError, error);

  std::map<std::string, std::string> outputs = {
      {"corpus.jsonl", (ctx.out / "corpus.jsonl").string()},
      {"truth_funders.tsv", (ctx.out / "truth_funders.tsv").string()},
      {"curated.tsv", (ctx.out / "curated.tsv").string()}};

  if (sf.with_oracle) {
    if (spec.n_pubs > 100000)
      return fail(kConfigError, "--oracle is quadratic; refuse corpora above 1e5 pubs");
    std::istringstream in(result.corpus_jsonl);
    IngestReport report;
    Corpus raw = ingest_corpus(in, report);
    Corpus corpus = filter_corpus(raw, ctx.cfg.corpus);
    oracle::Input oin;
    for (const auto& [name, row] : result.truth) oin.labels[name] = row.assignment.to_string();
    oracle::Input converted = oracle::from_corpus(corpus, ResolutionTable{});
    oin.pubs = std::move(converted.pubs);
    oin.eu_members = builtin_eu_members();
    oin.eu_domestic = ctx.cfg.eu_mode == EuMode::Domestic;
    oin.alpha = ctx.cfg.backbone.alpha;
    oin.direction_rule = direction_rule_name(ctx.cfg.backbone.rule);
    oracle::Metrics m = oracle::compute(oin);

    std::ostringstream truth_shares;
    truth_shares << "year\tlabel\tF_c\tF\n";
    for (const auto& [year, by_label] : m.shares) {
      for (const auto& [label, decomp] : by_label) {
        long double sum = 0;
        for (const auto& [den, num] : decomp)
          sum += static_cast<long double>(num) / static_cast<long double>(den);
        truth_shares << year << '\t' << label << '\t'
                     << fmt_g12(static_cast<double>(sum) /
                                static_cast<double>(m.funded_by_year.at(year)))
                     << '\t' << m.funded_by_year.at(year) << '\n';
      }
    }
    if (!write_file_atomic((ctx.out / "truth_shares.tsv").string(), truth_shares.str(), &error))
      return fail(kDataError, error);
    outputs["truth_shares.tsv"] = (ctx.out / "truth_shares.tsv").string();

    std::ostringstream truth_impact;
    truth_impact << "funder\trecipient\treduction\n";
    for (const auto& [key, ic] : m.funder_impact) {
      truth_impact << key.first << '\t' << key.second << '\t'
                   << fmt_g12(ic.m == 0 ? 0.0
                                        : static_cast<double>(ic.removed) /
                                              static_cast<double>(ic.m))
                   << '\n';
    }
    if (!write_file_atomic((ctx.out / "truth_impact.tsv").string(), truth_impact.str(), &error))
      return fail(kDataError, error);
    outputs["truth_impact.tsv"] = (ctx.out / "truth_impact.tsv").string();
  }

  std::cout << "synth: wrote " << spec.n_pubs << " publications (seed " << spec.seed << ")\n";
  return save_stage(ctx, "synth", {}, outputs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"national funding metrics pipeline"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CliFlags flags;
  SynthFlags synth_flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "config file (key = value lines)");
    sub->add_option("--input", flags.input, "input path");
    sub->add_option("--out-dir", flags.out_dir, "artifact directory");
    sub->add_option("--threads", flags.threads, "worker cap (never changes results)");
    sub->add_option("--eu-mode", flags.eu_mode, "foreign|domestic");
    sub->add_option("--alpha", flags.alpha, "backbone significance level");
    sub->add_option("--curated", flags.curated, "curated funder map TSV");
    sub->add_option("--aliases", flags.aliases, "country alias table TSV");
    sub->add_option("--continents", flags.continents, "country-continent TSV");
    sub->add_option("--eu-members", flags.eu_members, "EU member list file");
    return sub;
  };

  auto* ingest = add_common(app.add_subcommand("ingest", "parse, validate and filter a corpus"));
  auto* resolve =
      add_common(app.add_subcommand("resolve", "assign funder names to countries"));
  auto* attribute =
      add_common(app.add_subcommand("attribute", "fractional funding shares and incidence"));
  auto* portfolio =
      add_common(app.add_subcommand("portfolio", "funding intensity and portfolio classes"));
  auto* counterfactual = add_common(
      app.add_subcommand("counterfactual", "removal scenarios: reductions and KL divergence"));
  auto* network =
      add_common(app.add_subcommand("network", "build the funding-reliance network"));
  auto* backbone =
      add_common(app.add_subcommand("backbone", "extract the disparity-filter backbone"));
  auto* report = add_common(app.add_subcommand("report", "bundle figure data tables"));
  auto* synth = add_common(app.add_subcommand("synth", "generate a synthetic corpus"));
  synth->add_option("--seed", synth_flags.seed, "generator seed");
  synth->add_option("--pubs", synth_flags.pubs, "publication count");
  synth->add_option("--funders", synth_flags.funders, "funder count");
  synth->add_option("--countries", synth_flags.countries, "country count");
  synth->add_option("--p-funded", synth_flags.p_funded, "funded probability");
  synth->add_option("--p-international", synth_flags.p_international,
                    "international coauthor probability");
  synth->add_option("--p-foreign", synth_flags.p_foreign, "foreign funding probability");
  synth->add_option("--p-messy", synth_flags.p_messy, "messy raw-name probability");
  synth->add_option("--styles", synth_flags.styles, "comma list: country,eu,multi,opaque");
  synth->add_flag("--emit-noise", synth_flags.emit_noise, "append records filters must drop");
  synth->add_flag("--oracle", synth_flags.with_oracle, "emit truth metric tables (slow)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return cmd_ingest(flags);
    if (resolve->parsed()) return cmd_resolve(flags);
    if (attribute->parsed()) return cmd_attribute(flags);
    if (portfolio->parsed()) return cmd_portfolio(flags);
    if (counterfactual->parsed()) return cmd_counterfactual(flags);
    if (network->parsed()) return cmd_network(flags);
    if (backbone->parsed()) return cmd_backbone(flags);
    if (report->parsed()) return cmd_report(flags);
    if (synth->parsed()) return cmd_synth(flags, synth_flags);
  } catch (const std::exception& e) {
    return fail(kDataError, e.what());
  }
  return kConfigError;
}
