#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "funding/aliases.hpp"
#include "funding/config.hpp"
#include "funding/country_data.hpp"

using namespace funding;

// The shipped TSVs under data/ must stay in sync with the builtin tables;
// the builtin arrays are canonical, the files exist for user customization.

namespace {

std::filesystem::path data_dir() {
  if (const char* d = std::getenv("FUNDNET_DATA_DIR")) return d;
  return {};
}

}  // namespace

TEST_CASE("shipped alias table equals the builtin table") {
  auto dir = data_dir();
  if (dir.empty()) return;
  std::string error;
  auto shipped = CountryAliasTable::load_tsv((dir / "country_aliases.tsv").string(), &error);
  REQUIRE(shipped.has_value());
  auto builtin = CountryAliasTable::builtin();
  CHECK(shipped->size() == builtin.size());
  const char* probes[] = {"science foundation of china", "us israel fund",
                          "royal society of new zealand", "deutsche forschung",
                          "european commission"};
  for (const char* probe : probes) {
    auto a = shipped->scan(probe);
    auto b = builtin.scan(probe);
    CHECK(a.eu == b.eu);
    CHECK(a.codes == b.codes);
  }
}

TEST_CASE("shipped continent map equals the builtin map") {
  auto dir = data_dir();
  if (dir.empty()) return;
  std::string error;
  auto shipped = load_continent_map((dir / "continents.tsv").string(), &error);
  REQUIRE(shipped.has_value());
  auto builtin = builtin_continent_map();
  CHECK(*shipped == builtin);
}

TEST_CASE("shipped EU snapshot equals the builtin snapshot") {
  auto dir = data_dir();
  if (dir.empty()) return;
  std::string error;
  auto shipped = load_code_set((dir / "eu_members.tsv").string(), &error);
  REQUIRE(shipped.has_value());
  CHECK(*shipped == builtin_eu_members());
  CHECK(shipped->size() == 28);
}
