#pragma once

#include <map>
#include <optional>
#include <string>

namespace funding {

std::string sha256_hex(std::string_view data);
std::optional<std::string> sha256_file(const std::string& path, std::string* error = nullptr);

inline constexpr const char* kToolVersion = "fundnet 1.0.0";

// Records what each stage read and wrote. Reruns of an unchanged stage must
// reproduce the same digests; the manifest carries no timestamps so output
// directories stay byte-comparable.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string config_hash;

  struct Stage {
    std::map<std::string, std::string> inputs;   // filename -> sha256
    std::map<std::string, std::string> outputs;  // filename -> sha256
  };
  std::map<std::string, Stage> stages;

  std::string to_json() const;
  static std::optional<RunManifest> from_json(const std::string& text, std::string* error);

  static std::optional<RunManifest> load(const std::string& path, std::string* error);
  bool save(const std::string& path, std::string* error) const;
};

}  // namespace funding
