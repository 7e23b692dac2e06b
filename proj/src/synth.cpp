#include "funding/synth.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "funding/country_data.hpp"

namespace funding {

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  uint64_t u64() { return eng(); }
  // Modulo bias is irrelevant here; what matters is that draws are fully
  // specified by the standard, not implementation-defined distributions.
  uint32_t below(uint32_t n) { return n == 0 ? 0 : static_cast<uint32_t>(u64() % n); }
  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
};

const char* kDisciplines[] = {"Biology",        "Biomedical Research",
                              "Chemistry",      "Clinical Medicine",
                              "Earth and Space", "Engineering and Technology",
                              "Mathematics",    "Physics"};
constexpr int kNumDisciplines = 8;

enum class FunderClass : uint8_t {
  Curated,
  CuratedConflict,  // curated label contradicts the country token in the name
  CountryToken,
  EuToken,
  MultiToken,
  Authorship,
  Tie,
  FrequencyOne,
};

struct Funder {
  FunderClass cls;
  std::string name;         // normalized form (generation emits messy variants)
  std::string country;      // target country where applicable
  std::string tie_country;  // second country for Tie
  Assignment truth;
  Method method = Method::AuthorshipMajority;
};

struct PubDraft {
  std::string id;
  int year;
  std::string doc_type;
  std::string discipline;
  std::vector<std::string> countries;
  // (funder index, grants); -1 funder means none
  std::vector<std::pair<int, std::vector<std::string>>> acks;
};

std::string messy(const std::string& name, Rng& rng) {
  std::string out = "  ";
  for (char c : name) {
    if (rng.chance(0.3) && c >= 'a' && c <= 'z') {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else {
      out.push_back(c);
    }
    if (c == ' ' && rng.chance(0.2)) out.push_back(' ');
  }
  out += " ";
  return out;
}

}  // namespace

bool SynthSpec::valid(std::string* why) const {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (n_countries < 2 || n_countries > static_cast<int>(builtin_countries().size()))
    return fail("n_countries out of range");
  if (n_pubs < 1) return fail("n_pubs must be positive");
  if (n_funders < 0) return fail("n_funders must be >= 0");
  if (n_funders == 0 && p_funded > 0) return fail("p_funded > 0 requires funders");
  if (styles.empty() && p_funded > 0) return fail("p_funded > 0 requires a name style");
  for (double p : {p_funded, p_international_coauthor, p_foreign_funding, p_messy, p_no_grant}) {
    if (p < 0 || p > 1) return fail("probabilities must be in [0,1]");
  }
  if (year_min > year_max) return fail("year_min must be <= year_max");
  return true;
}

SynthResult generate(const SynthSpec& spec) {
  std::string why;
  if (!spec.valid(&why)) throw std::invalid_argument("synth: " + why);

  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  SynthResult result;

  auto countries = builtin_countries();
  std::vector<const CountryInfo*> pool;
  for (int i = 0; i < spec.n_countries; ++i) pool.push_back(&countries[i]);

  bool use_pattern = spec.styles.contains(NameStyle::CountryToken);
  bool use_eu = spec.styles.contains(NameStyle::EuToken);
  bool use_multi = spec.styles.contains(NameStyle::MultiToken);
  bool use_opaque = spec.styles.contains(NameStyle::Opaque);
  bool only_opaque = use_opaque && !use_pattern && !use_eu && !use_multi;

  // Funder pool with per-class quotas. Classes whose truth depends on the
  // name string require their style; curated rides along with any pattern
  // style so an opaque-only corpus resolves purely by authorship.
  std::vector<Funder> funders;
  std::vector<std::vector<int>> pattern_pools(pool.size());
  std::vector<std::vector<int>> authorship_pools(pool.size());
  std::vector<int> eu_pool, tie_pool, freq1_pool;

  if (spec.p_funded > 0 && spec.n_funders > 0) {
    int f = spec.n_funders;
    int n_freq1 = std::max(1, f / 10);
    int n_tie = use_opaque ? std::max(1, f / 20) : 0;
    int n_curated = !only_opaque ? std::max(1, f / 10) : 0;
    int n_conflict = (n_curated > 0 && use_pattern) ? std::min(2, n_curated) : 0;
    int n_eu = use_eu ? std::max(1, f / 12) : 0;
    int n_multi = use_multi ? std::max(1, f / 20) : 0;
    int assigned = n_freq1 + n_tie + n_curated + n_eu + n_multi;
    if (assigned > f) throw std::invalid_argument("synth: n_funders too small for styles");
    int remaining = f - assigned;
    int n_pattern = use_pattern ? (use_opaque ? remaining / 2 : remaining) : 0;
    int n_auth = use_opaque ? remaining - n_pattern : 0;
    if (!use_pattern && !use_opaque && remaining > 0) {
      // Only EU/multi styles enabled; grow those pools instead.
      n_eu += use_eu ? remaining : 0;
      n_multi += (!use_eu && use_multi) ? remaining : 0;
    }

    int seq = 0;
    auto next_seq = [&] { return ++seq; };
    auto country_at = [&](int i) { return pool[i % pool.size()]; };

    for (int i = 0; i < n_curated - n_conflict; ++i) {
      const CountryInfo* c = country_at(i);
      Funder fr;
      fr.cls = FunderClass::Curated;
      fr.name = "consortium kx" + std::to_string(next_seq());
      fr.country = c->code;
      fr.truth = Assignment::country(c->code);
      fr.method = Method::Curated;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_conflict; ++i) {
      // Name mentions a different country than the curated label.
      const CountryInfo* named = country_at(i);
      const CountryInfo* actual = country_at(i + 1);
      Funder fr;
      fr.cls = FunderClass::CuratedConflict;
      fr.name = std::string("friends of ") + named->name + " trust " +
                std::to_string(next_seq());
      std::transform(fr.name.begin(), fr.name.end(), fr.name.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      fr.country = actual->code;
      fr.truth = Assignment::country(actual->code);
      fr.method = Method::Curated;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_pattern; ++i) {
      const CountryInfo* c = country_at(i);
      Funder fr;
      fr.cls = FunderClass::CountryToken;
      std::string base = (i % 2 == 0) ? std::string("science foundation of ") + c->name
                                      : std::string(c->name) + " research council";
      std::transform(base.begin(), base.end(), base.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      fr.name = base + " " + std::to_string(next_seq());
      fr.country = c->code;
      fr.truth = Assignment::country(c->code);
      fr.method = Method::NamePattern;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_eu; ++i) {
      Funder fr;
      fr.cls = FunderClass::EuToken;
      fr.name = "european research programme " + std::to_string(next_seq());
      fr.truth = Assignment::eu();
      fr.method = Method::NamePattern;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_multi; ++i) {
      const CountryInfo* a = country_at(i);
      const CountryInfo* b = country_at(i + 3);
      if (a == b) b = country_at(i + 4);
      Funder fr;
      fr.cls = FunderClass::MultiToken;
      std::string base = std::string(a->name) + " " + b->name + " binational fund";
      std::transform(base.begin(), base.end(), base.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      fr.name = base + " " + std::to_string(next_seq());
      fr.truth = Assignment::multi();
      fr.method = Method::NamePattern;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_auth; ++i) {
      const CountryInfo* c = country_at(i);
      Funder fr;
      fr.cls = FunderClass::Authorship;
      fr.name = "agency fno" + std::to_string(next_seq());
      fr.country = c->code;
      fr.truth = Assignment::country(c->code);
      fr.method = Method::AuthorshipMajority;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_tie; ++i) {
      const CountryInfo* a = country_at(2 * i);
      const CountryInfo* b = country_at(2 * i + 1);
      Funder fr;
      fr.cls = FunderClass::Tie;
      fr.name = "institute fno" + std::to_string(next_seq());
      fr.country = a->code;
      fr.tie_country = b->code;
      fr.truth = Assignment::unresolved();
      fr.method = Method::TieUnresolved;
      funders.push_back(std::move(fr));
    }
    for (int i = 0; i < n_freq1; ++i) {
      Funder fr;
      fr.cls = FunderClass::FrequencyOne;
      fr.name = "office fno" + std::to_string(next_seq());
      fr.truth = Assignment::excluded();
      fr.method = Method::FrequencyExcluded;
      funders.push_back(std::move(fr));
    }

    for (size_t i = 0; i < funders.size(); ++i) {
      const Funder& fr = funders[i];
      int ci = -1;
      for (size_t k = 0; k < pool.size(); ++k) {
        if (fr.country == pool[k]->code) ci = static_cast<int>(k);
      }
      switch (fr.cls) {
        case FunderClass::Curated:
        case FunderClass::CuratedConflict:
        case FunderClass::CountryToken:
          if (ci >= 0) pattern_pools[ci].push_back(static_cast<int>(i));
          break;
        case FunderClass::Authorship:
          if (ci >= 0) authorship_pools[ci].push_back(static_cast<int>(i));
          break;
        case FunderClass::EuToken: eu_pool.push_back(static_cast<int>(i)); break;
        case FunderClass::Tie: tie_pool.push_back(static_cast<int>(i)); break;
        case FunderClass::FrequencyOne: freq1_pool.push_back(static_cast<int>(i)); break;
        case FunderClass::MultiToken: break;
      }
    }
  }

  std::vector<int> multi_pool;
  for (size_t i = 0; i < funders.size(); ++i) {
    if (funders[i].cls == FunderClass::MultiToken) multi_pool.push_back(static_cast<int>(i));
  }

  // Dedicated publications guarantee the corpus-dependent truths: five
  // majority pubs per authorship funder (three strictly domestic) and one
  // single-country pub per side of each tie.
  struct Role {
    enum Kind { Free, AuthDomestic, AuthMajority, TieSide } kind = Free;
    int funder = -1;
    int side = 0;
  };
  std::vector<Role> roles;
  long long needed = 0;
  for (size_t i = 0; i < funders.size(); ++i) {
    if (funders[i].cls == FunderClass::Authorship) {
      for (int k = 0; k < 3; ++k) roles.push_back({Role::AuthDomestic, static_cast<int>(i), 0});
      for (int k = 0; k < 2; ++k) roles.push_back({Role::AuthMajority, static_cast<int>(i), 0});
      needed += 5;
    } else if (funders[i].cls == FunderClass::Tie) {
      roles.push_back({Role::TieSide, static_cast<int>(i), 0});
      roles.push_back({Role::TieSide, static_cast<int>(i), 1});
      needed += 2;
    }
  }
  if (needed > spec.n_pubs)
    throw std::invalid_argument("synth: n_pubs too small for the funder pool");
  while (static_cast<int>(roles.size()) < spec.n_pubs) roles.push_back({});

  // Deterministic shuffle so special pubs are spread over years/order.
  for (size_t i = roles.size(); i > 1; --i) {
    size_t j = rng.below(static_cast<uint32_t>(i));
    std::swap(roles[i - 1], roles[j]);
  }

  int grant_seq = 0;
  auto make_grants = [&](Rng& r) {
    std::vector<std::string> grants;
    if (!r.chance(spec.p_no_grant)) {
      int n = 1 + static_cast<int>(r.below(2));
      for (int i = 0; i < n; ++i) grants.push_back("g" + std::to_string(++grant_seq));
    }
    return grants;
  };

  auto country_index = [&](const std::string& code) {
    for (size_t k = 0; k < pool.size(); ++k) {
      if (pool[k]->code == code) return static_cast<int>(k);
    }
    return -1;
  };

  auto pick_discipline = [&](int country_i, bool international_flavor) {
    // Country-skewed categorical; internationally funded work leans one
    // discipline over, so counterfactual profiles actually move.
    int peak = (country_i + (international_flavor ? 1 : 0)) % kNumDisciplines;
    if (rng.chance(0.5)) return std::string(kDisciplines[peak]);
    return std::string(kDisciplines[rng.below(kNumDisciplines)]);
  };

  std::vector<PubDraft> drafts;
  drafts.reserve(roles.size());
  std::vector<int> freq1_remaining = freq1_pool;

  for (size_t pi = 0; pi < roles.size(); ++pi) {
    const Role& role = roles[pi];
    PubDraft pub;
    pub.id = "p" + std::to_string(pi + 1);
    pub.year = spec.year_min + static_cast<int>(rng.below(
                                   static_cast<uint32_t>(spec.year_max - spec.year_min + 1)));
    {
      double r = rng.unit();
      pub.doc_type = r < 0.75 ? "Article" : (r < 0.90 ? "Review" : "Note");
    }

    int primary = static_cast<int>(rng.below(static_cast<uint32_t>(pool.size())));
    bool internationally_flavored = false;

    if (role.kind == Role::TieSide) {
      const Funder& fr = funders[role.funder];
      primary = country_index(role.side == 0 ? fr.country : fr.tie_country);
      pub.countries = {pool[primary]->code};
      pub.acks.emplace_back(role.funder, make_grants(rng));
    } else if (role.kind == Role::AuthDomestic || role.kind == Role::AuthMajority) {
      const Funder& fr = funders[role.funder];
      primary = country_index(fr.country);
      pub.countries = {pool[primary]->code};
      if (role.kind == Role::AuthMajority && spec.p_international_coauthor > 0 &&
          rng.chance(spec.p_international_coauthor)) {
        int other = static_cast<int>(rng.below(static_cast<uint32_t>(pool.size())));
        if (other != primary) pub.countries.push_back(pool[other]->code);
      }
      pub.acks.emplace_back(role.funder, make_grants(rng));
    } else {
      pub.countries = {pool[primary]->code};
      if (rng.chance(spec.p_international_coauthor)) {
        int extra = 1 + static_cast<int>(rng.below(2));
        for (int k = 0; k < extra; ++k) {
          int other = static_cast<int>(rng.below(static_cast<uint32_t>(pool.size())));
          if (other != primary) pub.countries.push_back(pool[other]->code);
        }
      }
      if (rng.chance(spec.p_funded) && !funders.empty()) {
        int n_acks = 1 + static_cast<int>(rng.below(3));
        for (int a = 0; a < n_acks; ++a) {
          int funder = -1;
          bool foreign = rng.chance(spec.p_foreign_funding);
          if (foreign && !only_opaque) {
            if (use_eu && !eu_pool.empty() && rng.chance(0.3)) {
              funder = eu_pool[rng.below(static_cast<uint32_t>(eu_pool.size()))];
            } else {
              // A pattern/curated funder from a non-author country.
              for (int attempt = 0; attempt < 8 && funder < 0; ++attempt) {
                int d = static_cast<int>(rng.below(static_cast<uint32_t>(pool.size())));
                bool is_author = std::find(pub.countries.begin(), pub.countries.end(),
                                           pool[d]->code) != pub.countries.end();
                if (is_author || pattern_pools[d].empty()) continue;
                const auto& p = pattern_pools[d];
                funder = p[rng.below(static_cast<uint32_t>(p.size()))];
              }
            }
          }
          if (funder < 0) {
            // Domestic: prefer pattern/curated, else an authorship funder of
            // the primary country (its mentions must stay on primary-country
            // pubs to keep the planted majority intact).
            const auto& pp = pattern_pools[primary];
            const auto& ap = authorship_pools[primary];
            if (!pp.empty() && (ap.empty() || rng.chance(0.5))) {
              funder = pp[rng.below(static_cast<uint32_t>(pp.size()))];
            } else if (!ap.empty()) {
              funder = ap[rng.below(static_cast<uint32_t>(ap.size()))];
            } else if (use_eu && !eu_pool.empty()) {
              funder = eu_pool[rng.below(static_cast<uint32_t>(eu_pool.size()))];
            }
          }
          if (funder >= 0) pub.acks.emplace_back(funder, make_grants(rng));
        }
        if (use_multi && !multi_pool.empty() && rng.chance(0.05)) {
          pub.acks.emplace_back(multi_pool[rng.below(static_cast<uint32_t>(multi_pool.size()))],
                                make_grants(rng));
        }
      }
      // Attach each frequency-one funder to exactly one publication.
      if (!freq1_remaining.empty() && rng.chance(0.02)) {
        pub.acks.emplace_back(freq1_remaining.back(), make_grants(rng));
        freq1_remaining.pop_back();
      }
    }

    for (const auto& [fidx, grants] : pub.acks) {
      (void)grants;
      if (fidx >= 0 && funders[fidx].cls != FunderClass::Authorship &&
          funders[fidx].truth.kind == LabelKind::Country &&
          funders[fidx].country != pool[primary]->code) {
        internationally_flavored = true;
      }
      if (fidx >= 0 && funders[fidx].truth.kind == LabelKind::Eu) internationally_flavored = true;
    }
    pub.discipline = pick_discipline(primary, internationally_flavored);

    std::sort(pub.countries.begin(), pub.countries.end());
    pub.countries.erase(std::unique(pub.countries.begin(), pub.countries.end()),
                        pub.countries.end());
    drafts.push_back(std::move(pub));
  }

  // Any frequency-one funders not yet placed get appended to the last pubs.
  for (size_t i = 0; i < freq1_remaining.size(); ++i) {
    size_t pi = drafts.size() - 1 - (i % drafts.size());
    drafts[pi].acks.emplace_back(freq1_remaining[i], std::vector<std::string>{});
  }

  // Name-resolved funders the random draws missed must still clear the
  // frequency filter, or their planted truth would read as Excluded.
  if (!funders.empty()) {
    std::vector<int> mention_count(funders.size(), 0);
    for (const auto& d : drafts) {
      for (const auto& [fi, g] : d.acks) {
        (void)g;
        if (fi >= 0) ++mention_count[fi];
      }
    }
    for (size_t i = 0; i < funders.size(); ++i) {
      const Funder& fr = funders[i];
      if (fr.cls == FunderClass::FrequencyOne || fr.cls == FunderClass::Tie ||
          fr.cls == FunderClass::Authorship)
        continue;
      size_t at = (i * 7919) % drafts.size();
      while (mention_count[i] < 2) {
        drafts[at].acks.emplace_back(static_cast<int>(i), std::vector<std::string>{});
        ++mention_count[i];
        at = (at + 104729) % drafts.size();
      }
    }
  }

  // Serialize. Raw names get messy variants; normalization must undo them.
  std::ostringstream corpus;
  for (const auto& pub : drafts) {
    nlohmann::ordered_json j;
    j["id"] = pub.id;
    j["year"] = pub.year;
    j["doc_type"] = pub.doc_type;
    j["discipline"] = pub.discipline;
    j["countries"] = pub.countries;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [fidx, grants] : pub.acks) {
      if (fidx < 0) continue;
      nlohmann::ordered_json f;
      std::string raw = funders[fidx].name;
      if (rng.chance(spec.p_messy)) raw = messy(raw, rng);
      f["name"] = raw;
      f["grants"] = grants;
      arr.push_back(std::move(f));
    }
    j["funders"] = std::move(arr);
    corpus << j.dump() << '\n';
  }

  if (spec.emit_noise) {
    std::ostringstream noise;
    noise << R"({"id":"nx1","year":2005,"doc_type":"Article","discipline":"Physics","countries":["US"],"funders":[]})" << '\n';
    noise << R"({"id":"nx2","year":2015,"doc_type":"Letter","discipline":"Physics","countries":["US"],"funders":[]})" << '\n';
    noise << R"({"id":"nx3","year":2015,"doc_type":"Article","discipline":"Psychology","countries":["US"],"funders":[]})" << '\n';
    noise << R"({"id":"nx4","year":2015,"doc_type":"Article","discipline":"Physics","countries":[],"funders":[]})" << '\n';
    noise << R"({"id":"nx5","year":2015,"doc_type":"Article","discipline":"Physics","funders":[]})" << '\n';
    noise << R"({"id":"nx6","year":2015,"doc_type":"Article","discipline":["Physics","Biology"],"countries":["US"],"funders":[]})" << '\n';
    noise << "this line is not json\n";
    noise << R"({"id":"p1","year":2015,"doc_type":"Article","discipline":"Physics","countries":["US"],"funders":[]})" << '\n';
    corpus << noise.str();
    result.noise_records = 8;
  }
  result.corpus_jsonl = corpus.str();

  // Truth and curated tables, sorted by name.
  std::map<std::string, const Funder*> by_name;
  for (const auto& fr : funders) by_name[fr.name] = &fr;
  if (by_name.size() != funders.size())
    throw std::logic_error("synth: funder name collision");
  std::ostringstream truth, curated;
  for (const auto& [name, fr] : by_name) {
    result.truth[name] = TruthRow{fr->truth, fr->method};
    truth << name << '\t' << fr->truth.to_string() << '\t' << method_name(fr->method) << '\n';
    if (fr->cls == FunderClass::Curated || fr->cls == FunderClass::CuratedConflict) {
      curated << name << '\t' << fr->truth.to_string() << '\n';
    }
  }
  result.truth_tsv = truth.str();
  result.curated_tsv = curated.str();
  return result;
}

}  // namespace funding
