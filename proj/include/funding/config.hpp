#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "funding/corpus.hpp"
#include "funding/portfolio.hpp"
#include "funding/reliance.hpp"

namespace funding {

// Shared pipeline configuration. Sources in increasing precedence: built-in
// defaults, config file, FUNDNET_* environment variables, CLI flags.
struct PipelineConfig {
  CorpusConfig corpus;
  EuMode eu_mode = EuMode::Foreign;
  BackboneParams backbone;
  int threads = 1;
  std::string out_dir = "out";
  std::string aliases_path;     // empty -> builtin table
  std::string curated_path;     // empty -> no curated map
  std::string continents_path;  // empty -> builtin table
  std::string eu_members_path;  // empty -> builtin snapshot

  // Canonical text of the analysis-relevant keys; threads and out_dir are
  // execution details and excluded so reruns hash identically.
  std::string canonical() const;
  std::string hash() const;
};

// `key = value` lines, '#' comments. Unknown keys are an error.
std::optional<PipelineConfig> parse_config_text(const std::string& text,
                                                const std::string& origin, std::string* error);
std::optional<PipelineConfig> load_config_file(const std::string& path, std::string* error);

// Applies FUNDNET_<UPPER_KEY> environment overrides in place.
bool apply_env_overrides(PipelineConfig& cfg, std::string* error);

// Single key=value application (shared by file, env, and flag layers).
bool apply_config_key(PipelineConfig& cfg, const std::string& key, const std::string& value,
                      std::string* error);

// One country code per line, '#' comments.
std::optional<std::set<std::string>> load_code_set(const std::string& path, std::string* error);

// TSV `code<TAB>continent`.
std::optional<std::map<std::string, std::string>> load_continent_map(const std::string& path,
                                                                     std::string* error);

}  // namespace funding
