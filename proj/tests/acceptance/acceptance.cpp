// Acceptance suite. Each criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails. The first argument is the path to
// the fundnet binary (used by the determinism and throughput criteria).

#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "funding/artifacts.hpp"
#include "funding/attribution.hpp"
#include "funding/corpus.hpp"
#include "funding/counterfactual.hpp"
#include "funding/country_data.hpp"
#include "funding/manifest.hpp"
#include "funding/oracle.hpp"
#include "funding/portfolio.hpp"
#include "funding/reliance.hpp"
#include "funding/resolver.hpp"
#include "funding/synth.hpp"

namespace fs = std::filesystem;
using namespace funding;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_tool;
int g_failures = 0;
std::ostringstream g_detail;

void report(int number, const std::string& name, bool pass, double seconds) {
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << "  criterion " << number << "  " << name << "  ("
       << std::fixed << std::setprecision(1) << seconds << " s)";
  std::cout << line.str() << "\n";
  if (!pass) {
    ++g_failures;
    std::string detail = g_detail.str();
    if (!detail.empty()) std::cout << detail;
  }
  g_detail.str("");
  g_detail.clear();
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---- shared pipeline-on-synthetic runner ---------------------------------

struct PipelineRun {
  Corpus corpus;
  ResolutionTable table;
  LabelSpace labels;
  std::vector<PubAttribution> attrs;
  std::map<int, std::vector<ShareRow>> shares;
  std::map<int, std::vector<ShareRow>> intl_shares;
  std::vector<IncidenceRow> incidence;
  std::map<std::string, CountryPortfolioStats> portfolio;
  std::vector<ImpactRow> all_international;
  std::vector<ImpactRow> matrix;
  std::vector<ScoredEdge> backbone;
  std::map<std::string, std::string> top_funder;
};

PipelineRun run_pipeline(const SynthResult& synth, EuMode eu_mode, int threads = 2) {
  PipelineRun run;
  std::istringstream in(synth.corpus_jsonl);
  IngestReport report;
  Corpus raw = ingest_corpus(in, report);
  CorpusConfig cfg;
  run.corpus = filter_corpus(raw, cfg, &report);
  std::string error;
  auto curated = CuratedMap::parse_tsv(synth.curated_tsv, "synth", &error);
  run.table =
      resolve_all(run.corpus, *curated, CountryAliasTable::builtin(), cfg).table;
  run.labels = LabelSpace::from_table(run.table);
  run.attrs = compute_attributions(run.corpus, run.table, run.labels, threads);
  run.shares = shares_by_year(run.corpus, run.attrs, run.labels);
  run.intl_shares = international_shares_by_year(run.corpus, run.attrs, run.labels);
  run.incidence = funding_incidence_tables(run.corpus, run.attrs);
  auto eu = builtin_eu_members();
  run.portfolio = all_portfolio_stats(run.corpus, run.attrs, run.labels, eu_mode, eu);
  run.all_international =
      all_international_impacts(run.corpus, run.attrs, run.labels, eu_mode, eu);
  run.matrix = scenario_matrix(run.corpus, run.attrs, run.labels, run.labels.labels, eu_mode,
                               eu, threads);
  RelianceNetwork net = build_network(run.matrix);
  run.backbone = disparity_filter(net, BackboneParams{});
  run.top_funder = top_funder_per_country(net);
  return run;
}

oracle::Metrics run_oracle(const PipelineRun& run, EuMode eu_mode) {
  oracle::Input input = oracle::from_corpus(run.corpus, run.table);
  input.eu_members = builtin_eu_members();
  input.eu_domestic = eu_mode == EuMode::Domestic;
  input.alpha = BackboneParams{}.alpha;
  input.direction_rule = direction_rule_name(BackboneParams{}.rule);
  return oracle::compute(input);
}

double decomposition_value(const oracle::Decomposition& d) {
  double v = 0;
  for (const auto& [den, num] : d) v += double(num) / double(den);
  return v;
}

// ---- criterion 1 ----------------------------------------------------------

bool check_oracle_equivalence(const PipelineRun& run, const oracle::Metrics& m,
                              uint64_t seed) {
  auto ctx = [&](const std::string& what) -> std::ostringstream& {
    g_detail << "  seed " << seed << ": " << what;
    return g_detail;
  };

  // Shares, rational and float.
  auto check_shares =
      [&](const std::map<int, std::vector<ShareRow>>& mine,
          const std::map<int, std::map<std::string, oracle::Decomposition>>& theirs,
          const std::map<int, long long>& funded_by_year) {
        if (mine.size() != theirs.size()) {
          ctx("share year sets differ\n");
          return false;
        }
        for (const auto& [year, rows] : mine) {
          auto it = theirs.find(year);
          if (it == theirs.end() || rows.size() != it->second.size()) {
            ctx("share labels differ in year ") << year << "\n";
            return false;
          }
          for (const auto& row : rows) {
            auto lit = it->second.find(row.label);
            if (lit == it->second.end() || row.sum.terms() != lit->second) {
              ctx("share decomposition mismatch ") << year << " " << row.label << "\n";
              return false;
            }
            if (row.funded != funded_by_year.at(year)) {
              ctx("funded count mismatch ") << year << "\n";
              return false;
            }
            double oracle_share = decomposition_value(lit->second) / double(row.funded);
            if (!close(row.share(), oracle_share, 1e-9)) {
              ctx("float share drift ") << year << " " << row.label << "\n";
              return false;
            }
          }
        }
        return true;
      };
  if (!check_shares(run.shares, m.shares, m.funded_by_year)) return false;
  if (!check_shares(run.intl_shares, m.intl_shares, m.intl_funded_by_year)) return false;

  // Incidence cells.
  size_t cells = 0;
  for (const auto& row : run.incidence) {
    auto it = m.incidence.find({row.year, subset_name(row.subset)});
    if (it == m.incidence.end()) {
      ctx("incidence cell missing\n");
      return false;
    }
    std::array<long long, 4> mine = {row.pubs, row.funded, row.single_label, row.multi_label};
    if (mine != it->second) {
      ctx("incidence mismatch ") << row.year << " " << subset_name(row.subset) << "\n";
      return false;
    }
    ++cells;
  }
  if (cells != m.incidence.size()) {
    ctx("incidence cell counts differ\n");
    return false;
  }

  // Portfolio counts and derived fractions.
  if (run.portfolio.size() != m.portfolio.size()) {
    ctx("portfolio country sets differ\n");
    return false;
  }
  for (const auto& [country, s] : run.portfolio) {
    const auto& o = m.portfolio.at(country);
    if (s.m != o.m || s.funded != o.funded || s.exclusive != o.exclusive ||
        s.cls[0] != o.cls[0] || s.cls[1] != o.cls[1] || s.cls[2] != o.cls[2] ||
        s.cls[3] != o.cls[3]) {
      ctx("portfolio counts mismatch ") << country << "\n";
      return false;
    }
    if (!close(s.intensity().value(), o.m ? double(o.funded) / double(o.m) : 0, 1e-9)) {
      ctx("I_c drift ") << country << "\n";
      return false;
    }
  }

  // Reductions and KL, both scenario families.
  std::map<std::string, const ImpactRow*> all_rows;
  for (const auto& row : run.all_international) all_rows[row.recipient] = &row;
  if (all_rows.size() != m.all_international.size()) {
    ctx("all-international recipient sets differ\n");
    return false;
  }
  for (const auto& [country, oc] : m.all_international) {
    const ImpactRow* row = all_rows.at(country);
    if (row->m != oc.m || row->removed != oc.removed) {
      ctx("reduction mismatch ") << country << "\n";
      return false;
    }
    if (row->kl.has_value() != oc.kl.has_value() ||
        (row->kl && !close(*row->kl, *oc.kl, 1e-9))) {
      ctx("KL mismatch ") << country << "\n";
      return false;
    }
  }
  std::map<std::pair<std::string, std::string>, const ImpactRow*> matrix_rows;
  for (const auto& row : run.matrix) matrix_rows[{row.funder, row.recipient}] = &row;
  if (matrix_rows.size() != m.funder_impact.size()) {
    ctx("impact matrix shapes differ\n");
    return false;
  }
  for (const auto& [key, oc] : m.funder_impact) {
    const ImpactRow* row = matrix_rows.at(key);
    if (row->m != oc.m || row->removed != oc.removed) {
      ctx("matrix mismatch ") << key.first << "->" << key.second << "\n";
      return false;
    }
    if (row->reduction().value() < -1e-15 || row->reduction().value() > 1.0 + 1e-15) {
      ctx("matrix entry out of [0,1]\n");
      return false;
    }
    if (row->kl.has_value() != oc.kl.has_value() ||
        (row->kl && !close(*row->kl, *oc.kl, 1e-9))) {
      ctx("matrix KL mismatch\n");
      return false;
    }
  }

  // Backbone keep set and top funders.
  std::set<std::pair<std::string, std::string>> kept;
  for (const auto& se : run.backbone) {
    if (se.kept) kept.insert({se.edge.source, se.edge.target});
  }
  if (kept != m.backbone_kept) {
    ctx("backbone keep sets differ\n");
    return false;
  }
  if (run.top_funder != m.top_funder) {
    ctx("top funder maps differ\n");
    return false;
  }
  return true;
}

void criterion_1() {
  auto t0 = Clock::now();
  bool pass = true;
  for (uint64_t seed = 1; seed <= 20 && pass; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_pubs = 10000;
    spec.n_funders = 120;
    spec.n_countries = 20;
    SynthResult synth = generate(spec);
    PipelineRun run = run_pipeline(synth, EuMode::Foreign);
    oracle::Metrics m = run_oracle(run, EuMode::Foreign);
    pass = check_oracle_equivalence(run, m, seed);
  }
  double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (seconds >= 60.0) {
    g_detail << "  runtime " << seconds << " s exceeds the 60 s budget\n";
    pass = false;
  }
  report(1, "oracle equivalence on 20 seeded corpora", pass, seconds);
}

// ---- criterion 2 ----------------------------------------------------------

void criterion_2() {
  auto t0 = Clock::now();
  bool pass = true;
  long long ties = 0, excluded = 0, names = 0;
  for (uint64_t seed = 101; seed <= 105 && pass; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_pubs = 5000;
    spec.n_funders = 100;
    SynthResult synth = generate(spec);
    std::istringstream in(synth.corpus_jsonl);
    IngestReport report;
    Corpus corpus = filter_corpus(ingest_corpus(in, report), CorpusConfig{});
    std::string error;
    auto curated = CuratedMap::parse_tsv(synth.curated_tsv, "synth", &error);
    auto resolved = resolve_all(corpus, *curated, CountryAliasTable::builtin(), CorpusConfig{});
    for (const auto& [name, rec] : resolved.table) {
      ++names;
      auto it = synth.truth.find(name);
      if (it == synth.truth.end() || rec.assignment != it->second.assignment ||
          rec.method != it->second.method) {
        g_detail << "  seed " << seed << ": wrong assignment for '" << name << "'\n";
        pass = false;
        break;
      }
      if (rec.method == Method::TieUnresolved) {
        ++ties;
        if (rec.assignment != Assignment::unresolved()) pass = false;
      }
      if (rec.frequency < 2) {
        ++excluded;
        if (rec.assignment != Assignment::excluded()) pass = false;
      }
    }
  }
  if (ties == 0 || excluded == 0) {
    g_detail << "  planted ties or frequency-1 strings missing from corpora\n";
    pass = false;
  }

  // The 98%-single-country authorship pattern.
  {
    std::ostringstream corpus_text;
    for (int i = 0; i < 98; ++i)
      corpus_text << R"({"id":"gb)" << i
                  << R"(","year":2015,"doc_type":"Article","discipline":"Earth and Space",)"
                  << R"("countries":["GB"],"funders":[{"name":"NERC","grants":[]}]})" << "\n";
    corpus_text
        << R"({"id":"x1","year":2015,"doc_type":"Article","discipline":"Earth and Space","countries":["FR"],"funders":[{"name":"NERC","grants":[]}]})"
        << "\n"
        << R"({"id":"x2","year":2015,"doc_type":"Article","discipline":"Earth and Space","countries":["JP"],"funders":[{"name":"NERC","grants":[]}]})"
        << "\n";
    std::istringstream in(corpus_text.str());
    IngestReport report;
    Corpus corpus = filter_corpus(ingest_corpus(in, report), CorpusConfig{});
    auto resolved =
        resolve_all(corpus, CuratedMap{}, CountryAliasTable::builtin(), CorpusConfig{});
    const auto& rec = resolved.table.at("nerc");
    if (rec.assignment != Assignment::country("GB") ||
        rec.method != Method::AuthorshipMajority) {
      g_detail << "  NERC-pattern case resolved to " << rec.assignment.to_string() << "\n";
      pass = false;
    }
  }
  report(2, "resolver correctness against planted truth (" + std::to_string(names) + " names)",
         pass, std::chrono::duration<double>(Clock::now() - t0).count());
}

// ---- criterion 3 ----------------------------------------------------------

void criterion_3() {
  auto t0 = Clock::now();
  bool pass = true;
  for (uint64_t seed = 201; seed <= 210 && pass; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_pubs = 4000;
    spec.n_funders = 90;
    spec.p_funded = 0.3 + 0.07 * double(seed - 201);
    SynthResult synth = generate(spec);
    PipelineRun run = run_pipeline(synth, EuMode::Foreign);
    for (size_t pi = 0; pi < run.attrs.size(); ++pi) {
      const auto& attr = run.attrs[pi];
      if (!attr.funded()) continue;
      long long total = 0;
      for (const auto& [label, n] : attr.counts) total += n;
      if (total != attr.countable) {  // sum of f_{c,p} == 1 exactly
        g_detail << "  seed " << seed << ": fractions of pub " << run.corpus.pubs[pi].id
                 << " do not sum to 1\n";
        pass = false;
        break;
      }
    }
    for (const auto& [year, rows] : run.shares) {
      double total = 0;
      RationalSum combined;
      for (const auto& row : rows) {
        total += row.share();
        combined.add(row.sum);
      }
      if (!close(total, 1.0, 1e-12) ||
          !close(combined.value(), double(rows.front().funded), 1e-9)) {
        g_detail << "  seed " << seed << ": year " << year << " shares sum to " << total
                 << "\n";
        pass = false;
      }
    }
  }
  report(3, "fractional-counting identities", pass,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// ---- criterion 4 ----------------------------------------------------------

void criterion_4() {
  auto t0 = Clock::now();
  bool pass = true;
  for (uint64_t seed = 301; seed <= 306 && pass; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_pubs = 4000;
    spec.n_funders = 90;
    SynthResult synth = generate(spec);
    for (EuMode mode : {EuMode::Foreign, EuMode::Domestic}) {
      PipelineRun run = run_pipeline(synth, mode);
      for (const auto& [country, s] : run.portfolio) {
        long long total = s.cls[0] + s.cls[1] + s.cls[2] + s.cls[3];
        if (total != s.m) {
          g_detail << "  " << country << ": classes do not partition\n";
          pass = false;
        }
        Fraction not_funded = s.class_fraction(PortfolioClass::NotFunded);
        if (!close(s.intensity().value(), 1.0 - not_funded.value(), 1e-12)) {
          g_detail << "  " << country << ": I_c != 1 - not_funded\n";
          pass = false;
        }
        if (s.funded > 0) {
          Fraction product = *s.exclusive_funded() * s.intensity();
          if (!(product == s.exclusive_all()) ||
              !close(product.value(), s.exclusive_all().value(), 1e-12)) {
            g_detail << "  " << country << ": C_c identity violated\n";
            pass = false;
          }
        }
      }
    }
  }
  report(4, "portfolio partition and C_c identities", pass,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// ---- criterion 5 ----------------------------------------------------------

void criterion_5() {
  auto t0 = Clock::now();
  bool pass = true;
  for (uint64_t seed = 401; seed <= 406 && pass; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.n_pubs = 4000;
    spec.n_funders = 90;
    SynthResult synth = generate(spec);
    PipelineRun foreign = run_pipeline(synth, EuMode::Foreign);
    PipelineRun domestic = run_pipeline(synth, EuMode::Domestic);

    auto check_rows = [&](const std::vector<ImpactRow>& rows) {
      for (const auto& row : rows) {
        if (row.removed < 0 || row.removed > row.m) return false;
        double r = row.reduction().value();
        if (r < 0 || r > 1) return false;
        long long cf_total = 0;
        for (const auto& [disc, n] : row.counterfactual) {
          auto it = row.actual.find(disc);
          if (it == row.actual.end() || n > it->second) return false;
          cf_total += n;
        }
        if (cf_total != row.m - row.removed) return false;
        if (cf_total > 0 && !row.kl.has_value()) return false;
        if (row.kl && (!std::isfinite(*row.kl) || *row.kl < -1e-12)) return false;
        if (row.kl) {
          bool profiles_equal = true;
          long long n_total = cf_total, m_total = row.m;
          for (const auto& [disc, mv] : row.actual) {
            long long nv = row.counterfactual.count(disc) ? row.counterfactual.at(disc) : 0;
            if (!close(double(nv) / double(n_total), double(mv) / double(m_total), 1e-12))
              profiles_equal = false;
          }
          if (profiles_equal && !close(*row.kl, 0.0, 1e-12)) return false;
          if (close(*row.kl, 0.0, 1e-12) && !profiles_equal) return false;
        }
      }
      return true;
    };
    if (!check_rows(foreign.all_international) || !check_rows(foreign.matrix) ||
        !check_rows(domestic.all_international) || !check_rows(domestic.matrix)) {
      g_detail << "  seed " << seed << ": counterfactual invariant violated\n";
      pass = false;
      break;
    }

    auto eu = builtin_eu_members();
    std::map<std::string, double> foreign_reduction;
    for (const auto& row : foreign.all_international)
      foreign_reduction[row.recipient] = row.reduction().value();
    for (const auto& row : domestic.all_international) {
      if (!eu.contains(row.recipient)) continue;
      if (row.reduction().value() > foreign_reduction.at(row.recipient) + 1e-15) {
        g_detail << "  seed " << seed << ": eu_mode=domestic raised " << row.recipient
                 << "'s reduction\n";
        pass = false;
      }
    }
  }
  report(5, "counterfactual invariants and EU-mode direction", pass,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// ---- criterion 6 ----------------------------------------------------------

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 40);
}

void criterion_6() {
  auto t0 = Clock::now();
  bool pass = true;

  // Closed form vs the null-model integral 1 - (k-1) * Int_0^p (1-x)^(k-2) dx.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    long long k = 2 + static_cast<long long>(rng() % 49);
    double p = double(1 + rng() % 99999) / 100000.0;
    auto integrand = [&](double x) { return std::pow(1.0 - x, double(k - 2)); };
    double numeric = 1.0 - double(k - 1) * integrate(integrand, 0.0, p, 1e-13);
    double closed = edge_significance(p, k);
    if (!close(closed, numeric, 1e-10)) {
      g_detail << "  alpha(" << p << ", " << k << "): closed " << closed << " vs numeric "
               << numeric << "\n";
      pass = false;
    }
  }

  // Uniform-weight neighborhoods must be fully pruned at alpha = 0.05.
  for (long long k = 2; k <= 64 && pass; ++k) {
    RelianceNetwork star;
    for (long long i = 0; i < k; ++i)
      star.edges.push_back(RelianceEdge{"S", "T" + std::to_string(i), 0.31});
    BackboneParams params;
    params.rule = DirectionRule::Out;
    for (const auto& se : disparity_filter(star, params)) {
      if (se.kept) {
        g_detail << "  uniform k=" << k << " kept an edge (alpha_out " << se.alpha_out
                 << ")\n";
        pass = false;
      }
    }
  }

  // Monotonicity in alpha on random graphs, every direction rule.
  std::mt19937_64 rng2(78);
  for (int trial = 0; trial < 6 && pass; ++trial) {
    RelianceNetwork net;
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < 400; ++i) {
      int a = int(rng2() % 25), b = int(rng2() % 25);
      if (a == b || !seen.insert({a, b}).second) continue;
      net.edges.push_back(RelianceEdge{"N" + std::to_string(a), "N" + std::to_string(b),
                                       double(1 + rng2() % 1000) / 1000.0});
    }
    for (auto rule : {DirectionRule::Out, DirectionRule::In, DirectionRule::Either}) {
      std::set<std::pair<std::string, std::string>> previous;
      for (double alpha : {0.005, 0.05, 0.3, 0.8}) {
        BackboneParams params;
        params.alpha = alpha;
        params.rule = rule;
        std::set<std::pair<std::string, std::string>> kept;
        for (const auto& se : disparity_filter(net, params)) {
          if (se.kept) kept.insert({se.edge.source, se.edge.target});
        }
        for (const auto& e : previous) {
          if (!kept.contains(e)) {
            g_detail << "  backbone not monotone in alpha\n";
            pass = false;
          }
        }
        previous = std::move(kept);
      }
    }
  }
  report(6, "disparity filter: integral agreement, uniform pruning, monotonicity", pass,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

// ---- criteria 7 and 8 (drive the CLI) -------------------------------------

int run_tool(const std::string& args) {
  std::string cmd = g_tool + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool run_chain(const std::string& dir, int threads, const std::string& corpus_path) {
  std::string t = " --threads " + std::to_string(threads) + " --out-dir " + dir;
  if (run_tool("ingest --input " + corpus_path + t)) return false;
  if (run_tool("resolve --curated " + dir + "/curated.tsv" + t)) return false;
  if (run_tool("attribute" + t)) return false;
  if (run_tool("portfolio" + t)) return false;
  if (run_tool("counterfactual" + t)) return false;
  if (run_tool("network" + t)) return false;
  if (run_tool("backbone" + t)) return false;
  if (run_tool("report" + t)) return false;
  return true;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string* diff) {
  std::set<std::string> names_a, names_b;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) names_a.insert(fs::relative(e.path(), a).string());
  }
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) names_b.insert(fs::relative(e.path(), b).string());
  }
  if (names_a != names_b) {
    *diff = "file sets differ";
    return false;
  }
  for (const auto& name : names_a) {
    auto da = sha256_file((a / name).string(), nullptr);
    auto db = sha256_file((b / name).string(), nullptr);
    if (!da || !db || *da != *db) {
      *diff = name;
      return false;
    }
  }
  return true;
}

void criterion_7() {
  auto t0 = Clock::now();
  bool pass = true;
  fs::path base = fs::temp_directory_path() / "fundnet_accept_det";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path d1 = base / "t1", d4 = base / "t4";
  fs::create_directories(d1);
  fs::create_directories(d4);

  if (run_tool("synth --seed 42 --pubs 8000 --funders 100 --countries 18 --out-dir " +
               d1.string())) {
    g_detail << "  synth failed\n";
    pass = false;
  }
  if (pass && run_tool("synth --seed 42 --pubs 8000 --funders 100 --countries 18 --out-dir " +
                       d4.string())) {
    pass = false;
  }
  if (pass && !run_chain(d1.string(), 1, (d1 / "corpus.jsonl").string())) {
    g_detail << "  chain with --threads 1 failed\n";
    pass = false;
  }
  if (pass && !run_chain(d4.string(), 4, (d4 / "corpus.jsonl").string())) {
    g_detail << "  chain with --threads 4 failed\n";
    pass = false;
  }
  std::string diff;
  if (pass && !dirs_identical(d1, d4, &diff)) {
    g_detail << "  outputs differ at " << diff << "\n";
    pass = false;
  }
  fs::remove_all(base);
  report(7, "byte-identical chain under different --threads", pass,
         std::chrono::duration<double>(Clock::now() - t0).count());
}

void criterion_8() {
  auto t0 = Clock::now();
  bool pass = true;
  fs::path dir = fs::temp_directory_path() / "fundnet_accept_big";
  fs::remove_all(dir);
  fs::create_directories(dir);

  if (run_tool("synth --seed 7 --pubs 1000000 --funders 3000 --countries 60 --out-dir " +
               dir.string())) {
    g_detail << "  synth failed\n";
    pass = false;
  }
  double gen_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  auto t1 = Clock::now();
  if (pass && !run_chain(dir.string(), 4, (dir / "corpus.jsonl").string())) {
    g_detail << "  chain failed\n";
    pass = false;
  }
  double chain_seconds = std::chrono::duration<double>(Clock::now() - t1).count();
  if (chain_seconds >= 300.0) {
    g_detail << "  pipeline took " << chain_seconds << " s (budget 300 s)\n";
    pass = false;
  }

  struct rusage usage{};
  getrusage(RUSAGE_CHILDREN, &usage);
  double peak_gb = double(usage.ru_maxrss) / (1024.0 * 1024.0);
  if (peak_gb >= 4.0) {
    g_detail << "  peak child RSS " << peak_gb << " GB (budget 4 GB)\n";
    pass = false;
  }

  fs::remove_all(dir);
  std::ostringstream name;
  name << "1e6-pub chain in " << std::fixed << std::setprecision(1) << chain_seconds
       << " s (gen " << gen_seconds << " s), peak " << std::setprecision(2) << peak_gb
       << " GB";
  report(8, name.str(), pass, std::chrono::duration<double>(Clock::now() - t0).count());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-fundnet>\n";
    return 2;
  }
  g_tool = argv[1];

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  if (g_failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
  return 1;
}
