#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/domain/types.h"

namespace uisdial::catalog {

inline constexpr int kCatalogFormatVersion = 1;
inline constexpr int kEarliestReleaseYear = 1888;

enum class Country { Domestic, Foreign, Other };
enum class PersonRole { Actor, Actress, Director };

std::string_view to_string(Country country);
std::string_view to_string(PersonRole role);
PersonRole parse_person_role(std::string_view text);

struct PersonRef {
  std::string name;
  PersonRole role = PersonRole::Actor;
  std::optional<std::string> profile_sentence;

  friend bool operator==(const PersonRef&, const PersonRef&) = default;
};

struct MovieRecord {
  std::string movie_id;
  std::string title;
  std::optional<int> release_year;
  std::vector<std::string> genres;
  Country country = Country::Other;
  std::vector<PersonRef> cast;
  std::vector<PersonRef> director;
  std::vector<std::string> theme_keywords;

  friend bool operator==(const MovieRecord&, const MovieRecord&) = default;
};

struct OpeningUtterance {
  S1Pattern pattern = S1Pattern::T2;
  std::string text;
  std::optional<PersonRef> person;  // required for T3
  std::optional<std::string> theme;  // required for T2

  friend bool operator==(const OpeningUtterance&, const OpeningUtterance&) = default;
};

struct Scenario {
  std::string scenario_id;
  std::string movie_id;
  OpeningUtterance s1;
  std::string s2;
  std::string s3;
  std::string s4;
  std::vector<std::string> s5_pool;
  // Hand-written consent-tone rewrites keyed by Slot::S3 / Slot::S4.
  std::map<Slot, std::string> consent_variants;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct CatalogFile {
  std::vector<MovieRecord> movies;
  std::vector<Scenario> scenarios;

  const MovieRecord* find_movie(std::string_view movie_id) const;
  const Scenario* find_scenario(std::string_view scenario_id) const;

  friend bool operator==(const CatalogFile&, const CatalogFile&) = default;
};

// Parses and fully validates a catalog document. Syntax errors raise
// ParseError with 1-based line/column; schema and integrity problems raise
// ValidationError naming the offending movie or scenario.
CatalogFile parse_catalog(std::string_view document);
CatalogFile load_catalog(const std::filesystem::path& path);

nlohmann::json to_json(const CatalogFile& catalog);
std::string serialize_catalog(const CatalogFile& catalog);

// Referential integrity and per-record invariants. Called by parse_catalog;
// exposed for catalogs built in code.
void validate_catalog(const CatalogFile& catalog);

int current_year();

}  // namespace uisdial::catalog
