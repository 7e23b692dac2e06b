#include "funding/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "funding/manifest.hpp"

namespace funding {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::set<std::string> split_set(const std::string& s) {
  std::set<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.insert(cur);
  }
  return out;
}

std::string join_set(const std::set<std::string>& s) {
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out.push_back(',');
    out += v;
  }
  return out;
}

const char* kKeys[] = {"year_min",       "year_max",  "allowed_doc_types",
                       "excluded_disciplines", "min_funder_frequency", "eu_mode",
                       "alpha",          "direction_rule", "threads",
                       "out_dir",        "aliases",   "curated",
                       "continents",     "eu_members"};

}  // namespace

bool apply_config_key(PipelineConfig& cfg, const std::string& key, const std::string& value,
                      std::string* error) {
  auto bad = [&](const std::string& msg) {
    if (error) *error = "config key '" + key + "': " + msg;
    return false;
  };
  try {
    if (key == "year_min") cfg.corpus.year_min = std::stoi(value);
    else if (key == "year_max") cfg.corpus.year_max = std::stoi(value);
    else if (key == "allowed_doc_types") cfg.corpus.allowed_doc_types = split_set(value);
    else if (key == "excluded_disciplines") cfg.corpus.excluded_disciplines = split_set(value);
    else if (key == "min_funder_frequency") cfg.corpus.min_funder_frequency = std::stoi(value);
    else if (key == "eu_mode") {
      if (value == "foreign") cfg.eu_mode = EuMode::Foreign;
      else if (value == "domestic") cfg.eu_mode = EuMode::Domestic;
      else return bad("expected foreign|domestic");
      cfg.corpus.eu_as_domestic = cfg.eu_mode == EuMode::Domestic;
    } else if (key == "alpha") {
      cfg.backbone.alpha = std::stod(value);
      if (!cfg.backbone.valid()) return bad("alpha must be in (0,1)");
    } else if (key == "direction_rule") {
      if (value == "out") cfg.backbone.rule = DirectionRule::Out;
      else if (value == "in") cfg.backbone.rule = DirectionRule::In;
      else if (value == "either") cfg.backbone.rule = DirectionRule::Either;
      else return bad("expected out|in|either");
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
      if (cfg.threads < 1) return bad("threads must be >= 1");
    } else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "aliases") cfg.aliases_path = value;
    else if (key == "curated") cfg.curated_path = value;
    else if (key == "continents") cfg.continents_path = value;
    else if (key == "eu_members") cfg.eu_members_path = value;
    else return bad("unknown key");
  } catch (const std::exception&) {
    return bad("bad value '" + value + "'");
  }
  return true;
}

std::optional<PipelineConfig> parse_config_text(const std::string& text,
                                                const std::string& origin, std::string* error) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      if (error) *error = origin + ":" + std::to_string(lineno) + ": expected key = value";
      return std::nullopt;
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (!apply_config_key(cfg, key, value, error)) {
      if (error) *error = origin + ":" + std::to_string(lineno) + ": " + *error;
      return std::nullopt;
    }
  }
  return cfg;
}

std::optional<PipelineConfig> load_config_file(const std::string& path, std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open config: " + path;
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path, error);
}

bool apply_env_overrides(PipelineConfig& cfg, std::string* error) {
  for (const char* key : kKeys) {
    std::string env = "FUNDNET_";
    for (const char* p = key; *p; ++p)
      env.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*p))));
    const char* value = std::getenv(env.c_str());
    if (!value) continue;
    if (!apply_config_key(cfg, key, value, error)) return false;
  }
  return true;
}

std::string PipelineConfig::canonical() const {
  std::ostringstream out;
  out << "allowed_doc_types=" << join_set(corpus.allowed_doc_types) << '\n';
  out << "alpha=" << backbone.alpha << '\n';
  out << "aliases=" << aliases_path << '\n';
  out << "continents=" << continents_path << '\n';
  out << "curated=" << curated_path << '\n';
  out << "direction_rule=" << direction_rule_name(backbone.rule) << '\n';
  out << "eu_members=" << eu_members_path << '\n';
  out << "eu_mode=" << (eu_mode == EuMode::Domestic ? "domestic" : "foreign") << '\n';
  out << "excluded_disciplines=" << join_set(corpus.excluded_disciplines) << '\n';
  out << "min_funder_frequency=" << corpus.min_funder_frequency << '\n';
  out << "year_max=" << corpus.year_max << '\n';
  out << "year_min=" << corpus.year_min << '\n';
  return out.str();
}

std::string PipelineConfig::hash() const { return sha256_hex(canonical()); }

std::optional<std::set<std::string>> load_code_set(const std::string& path, std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open: " + path;
    return std::nullopt;
  }
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.insert(t);
  }
  return out;
}

std::optional<std::map<std::string, std::string>> load_continent_map(const std::string& path,
                                                                     std::string* error) {
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open: " + path;
    return std::nullopt;
  }
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t tab = t.find('\t');
    if (tab == std::string::npos) {
      if (error) *error = path + ":" + std::to_string(lineno) + ": expected code<TAB>continent";
      return std::nullopt;
    }
    out[trim(t.substr(0, tab))] = trim(t.substr(tab + 1));
  }
  return out;
}

}  // namespace funding
