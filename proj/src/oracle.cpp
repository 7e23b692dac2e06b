#include "funding/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace funding::oracle {

Input from_corpus(const Corpus& corpus, const ResolutionTable& table) {
  Input input;
  for (const auto& pub : corpus.pubs) {
    Pub p;
    p.id = pub.id;
    p.year = pub.year;
    p.discipline = corpus.disciplines.str(pub.discipline);
    for (uint16_t c : pub.countries) p.countries.push_back(corpus.country(c));
    for (const auto& ack : pub.acks) {
      p.mentions.push_back(Mention{corpus.funder_name(ack.funder), ack.grants});
    }
    input.pubs.push_back(std::move(p));
  }
  for (const auto& [name, rec] : table) {
    input.labels[name] = rec.assignment.to_string();
  }
  return input;
}

namespace {

bool countable(const std::string& label) {
  return label != "MULTI" && label != "UNRESOLVED" && label != "EXCLUDED";
}

// Distinct (funder, grant) instances of one pub, as label strings.
std::vector<std::string> instance_labels(const Pub& pub, const Input& input) {
  std::vector<std::pair<std::string, std::string>> seen;
  std::vector<std::string> labels;
  for (const auto& m : pub.mentions) {
    auto it = input.labels.find(m.funder);
    if (it == input.labels.end())
      throw std::logic_error("oracle: funder missing from label table: " + m.funder);
    if (it->second == "EXCLUDED") continue;
    std::vector<std::string> grants = m.grants;
    if (grants.empty()) grants.push_back("");
    for (const auto& g : grants) {
      bool dup = false;
      for (const auto& s : seen) {
        if (s.first == m.funder && s.second == g) dup = true;
      }
      if (dup) continue;
      seen.emplace_back(m.funder, g);
      labels.push_back(it->second);
    }
  }
  return labels;
}

std::vector<std::string> countable_labels(const Pub& pub, const Input& input) {
  std::vector<std::string> out;
  for (const auto& l : instance_labels(pub, input)) {
    if (countable(l)) out.push_back(l);
  }
  return out;
}

std::vector<std::string> distinct(std::vector<std::string> v) {
  std::vector<std::string> out;
  for (const auto& s : v) {
    bool dup = false;
    for (const auto& t : out) {
      if (t == s) dup = true;
    }
    if (!dup) out.push_back(s);
  }
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& t : v) {
    if (t == s) return true;
  }
  return false;
}

void add_fraction(Decomposition& d, long long num, long long den) {
  long long g = std::gcd(num, den);
  d[den / g] += num / g;
}

std::optional<double> kl(const std::map<std::string, long long>& cf,
                         const std::map<std::string, long long>& actual) {
  long long n = 0, m = 0;
  for (const auto& [k, v] : cf) n += v;
  for (const auto& [k, v] : actual) m += v;
  if (n == 0) return std::nullopt;
  double d = 0;
  for (const auto& [disc, v] : cf) {
    if (v == 0) continue;
    double p = static_cast<double>(v) / static_cast<double>(n);
    double q = static_cast<double>(actual.at(disc)) / static_cast<double>(m);
    d += p * std::log(p / q);
  }
  return d;
}

// True iff the pub acknowledges a countable label other than `focal`
// (EU counting as focal for members when eu_domestic).
bool internationally_funded(const Pub& pub, const Input& input, const std::string& focal) {
  bool eu_self = input.eu_domestic && input.eu_members.contains(focal);
  for (const auto& l : countable_labels(pub, input)) {
    if (l == focal) continue;
    if (eu_self && l == "EU") continue;
    return true;
  }
  return false;
}

}  // namespace

Metrics compute(const Input& input) {
  Metrics out;

  // Shares and incidence.
  for (const auto& pub : input.pubs) {
    auto labels = countable_labels(pub, input);
    long long np = static_cast<long long>(labels.size());
    bool funded = np > 0;
    bool intl = pub.countries.size() >= 2;
    long long n_distinct = static_cast<long long>(distinct(labels).size());

    for (const std::string& subset :
         {std::string("all"), std::string(intl ? "international" : "domestic")}) {
      auto& cell = out.incidence[{pub.year, subset}];
      ++cell[0];
      if (funded) {
        ++cell[1];
        if (n_distinct == 1) ++cell[2];
        else ++cell[3];
      }
    }
    if (funded) {
      ++out.funded_by_year[pub.year];
      for (const auto& l : distinct(labels)) {
        long long n = 0;
        for (const auto& x : labels) {
          if (x == l) ++n;
        }
        add_fraction(out.shares[pub.year][l], n, np);
      }
      if (intl) {
        ++out.intl_funded_by_year[pub.year];
        for (const auto& l : distinct(labels)) {
          long long n = 0;
          for (const auto& x : labels) {
            if (x == l) ++n;
          }
          add_fraction(out.intl_shares[pub.year][l], n, np);
        }
      }
    }
  }

  // Portfolio per (pub, author country).
  for (const auto& pub : input.pubs) {
    auto labels = distinct(countable_labels(pub, input));
    for (const auto& c : pub.countries) {
      auto& pc = out.portfolio[c];
      ++pc.m;
      if (labels.empty()) {
        ++pc.cls[0];
        continue;
      }
      ++pc.funded;
      bool eu_self = input.eu_domestic && input.eu_members.contains(c);
      bool has_self = false, has_other = false;
      for (const auto& l : labels) {
        if (l == c || (eu_self && l == "EU")) has_self = true;
        else has_other = true;
      }
      if (has_self && !has_other) {
        ++pc.cls[1];
        ++pc.exclusive;
      } else if (has_self) {
        ++pc.cls[2];
      } else {
        ++pc.cls[3];
      }
    }
  }

  // All-international removal per recipient country.
  std::vector<std::string> all_countries;
  for (const auto& pub : input.pubs) {
    for (const auto& c : pub.countries) {
      if (!contains(all_countries, c)) all_countries.push_back(c);
    }
  }
  for (const auto& c : all_countries) {
    ImpactCounts ic;
    std::map<std::string, long long> actual, cf;
    for (const auto& pub : input.pubs) {
      if (!contains(pub.countries, c)) continue;
      ++ic.m;
      ++actual[pub.discipline];
      if (internationally_funded(pub, input, c)) {
        ++ic.removed;
      } else {
        ++cf[pub.discipline];
      }
    }
    ic.kl = kl(cf, actual);
    out.all_international[c] = ic;
  }

  // Per-funder removal scenarios; funder set = every countable label seen.
  std::vector<std::string> funder_labels;
  for (const auto& pub : input.pubs) {
    for (const auto& l : countable_labels(pub, input)) {
      if (!contains(funder_labels, l)) funder_labels.push_back(l);
    }
  }
  for (const auto& f : funder_labels) {
    bool eu_as_funder = input.eu_domestic && f != "EU" && input.eu_members.contains(f);
    for (const auto& c : all_countries) {
      ImpactCounts ic;
      std::map<std::string, long long> actual, cf;
      for (const auto& pub : input.pubs) {
        if (!contains(pub.countries, c)) continue;
        ++ic.m;
        ++actual[pub.discipline];
        bool funded_by_f = false;
        for (const auto& l : countable_labels(pub, input)) {
          if (l == f || (eu_as_funder && l == "EU")) funded_by_f = true;
        }
        bool foreign_author = false;
        for (const auto& a : pub.countries) {
          if (a != f) foreign_author = true;
        }
        if (funded_by_f && foreign_author) {
          ++ic.removed;
        } else {
          ++cf[pub.discipline];
        }
      }
      ic.kl = kl(cf, actual);
      out.funder_impact[{f, c}] = ic;
    }
  }

  // Backbone over the reliance network (positive, non-self reductions).
  struct Edge {
    std::string src, dst;
    double w;
  };
  std::vector<Edge> edges;
  for (const auto& [key, ic] : out.funder_impact) {
    if (key.first == key.second) continue;
    if (ic.removed <= 0 || ic.m <= 0) continue;
    edges.push_back(
        Edge{key.first, key.second,
             static_cast<double>(ic.removed) / static_cast<double>(ic.m)});
  }
  for (const auto& e : edges) {
    double out_sum = 0, in_sum = 0;
    long long k_out = 0, k_in = 0;
    for (const auto& o : edges) {
      if (o.src == e.src) {
        out_sum += o.w;
        ++k_out;
      }
      if (o.dst == e.dst) {
        in_sum += o.w;
        ++k_in;
      }
    }
    auto significance = [](double w, double sum, long long k) {
      if (k <= 1) return 1.0;
      return std::pow(1.0 - w / sum, static_cast<double>(k - 1));
    };
    bool keep_out = k_out == 1 || significance(e.w, out_sum, k_out) < input.alpha;
    bool keep_in = k_in == 1 || significance(e.w, in_sum, k_in) < input.alpha;
    bool kept = false;
    if (input.direction_rule == "out") kept = keep_out;
    else if (input.direction_rule == "in") kept = keep_in;
    else kept = keep_out || keep_in;
    if (kept) out.backbone_kept.insert({e.src, e.dst});
  }

  // Strongest in-edge per recipient, smallest code on ties.
  for (const auto& e : edges) {
    auto it = out.top_funder.find(e.dst);
    if (it == out.top_funder.end()) {
      out.top_funder[e.dst] = e.src;
      continue;
    }
    double best_w = 0;
    for (const auto& o : edges) {
      if (o.dst == e.dst && o.src == it->second) best_w = o.w;
    }
    if (e.w > best_w || (e.w == best_w && e.src < it->second)) out.top_funder[e.dst] = e.src;
  }

  return out;
}

}  // namespace funding::oracle
