#include "uisdial/catalog/catalog.h"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "uisdial/domain/errors.h"
#include "uisdial/text/text.h"

namespace uisdial::catalog {

using nlohmann::json;

std::string_view to_string(Country country) {
  switch (country) {
    case Country::Domestic: return "domestic";
    case Country::Foreign: return "foreign";
    case Country::Other: return "other";
  }
  return "?";
}

std::string_view to_string(PersonRole role) {
  switch (role) {
    case PersonRole::Actor: return "actor";
    case PersonRole::Actress: return "actress";
    case PersonRole::Director: return "director";
  }
  return "?";
}

PersonRole parse_person_role(std::string_view text) {
  if (text == "actor") return PersonRole::Actor;
  if (text == "actress") return PersonRole::Actress;
  if (text == "director") return PersonRole::Director;
  throw ValidationError("unknown person role '" + std::string(text) + "'");
}

namespace {

Country parse_country(std::string_view text) {
  if (text == "domestic") return Country::Domestic;
  if (text == "foreign") return Country::Foreign;
  if (text == "other") return Country::Other;
  throw ValidationError("unknown country '" + std::string(text) + "'");
}

// Converts a byte offset into 1-based line/column.
std::pair<std::size_t, std::size_t> line_column(std::string_view doc, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < doc.size(); ++i) {
    if (doc[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

template <typename T>
T required(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + key + "' has the wrong type");
  }
}

std::vector<std::string> string_list(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return {};
  return required<std::vector<std::string>>(j, key, where);
}

PersonRef person_from_json(const json& j, const std::string& where) {
  PersonRef p;
  p.name = required<std::string>(j, "name", where);
  p.role = parse_person_role(required<std::string>(j, "role", where));
  if (j.contains("profile_sentence") && !j.at("profile_sentence").is_null()) {
    p.profile_sentence = required<std::string>(j, "profile_sentence", where);
  }
  return p;
}

json person_to_json(const PersonRef& p) {
  json j;
  j["name"] = p.name;
  j["role"] = to_string(p.role);
  if (p.profile_sentence) j["profile_sentence"] = *p.profile_sentence;
  return j;
}

std::vector<PersonRef> people(const json& j, const char* key, const std::string& where) {
  std::vector<PersonRef> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw ValidationError(where + ": '" + key + "' must be an array");
  for (const auto& item : j.at(key)) out.push_back(person_from_json(item, where));
  return out;
}

MovieRecord movie_from_json(const json& j, std::size_t index) {
  const std::string where = "movies[" + std::to_string(index) + "]";
  MovieRecord m;
  m.movie_id = required<std::string>(j, "movie_id", where);
  const std::string mwhere = "movie '" + m.movie_id + "'";
  m.title = required<std::string>(j, "title", mwhere);
  if (j.contains("release_year") && !j.at("release_year").is_null()) {
    m.release_year = required<int>(j, "release_year", mwhere);
  }
  m.genres = string_list(j, "genres", mwhere);
  m.country = parse_country(j.value("country", std::string("other")));
  m.cast = people(j, "cast", mwhere);
  m.director = people(j, "director", mwhere);
  m.theme_keywords = string_list(j, "theme_keywords", mwhere);
  return m;
}

json movie_to_json(const MovieRecord& m) {
  json j;
  j["movie_id"] = m.movie_id;
  j["title"] = m.title;
  j["release_year"] = m.release_year ? json(*m.release_year) : json(nullptr);
  j["genres"] = m.genres;
  j["country"] = to_string(m.country);
  j["cast"] = json::array();
  for (const auto& p : m.cast) j["cast"].push_back(person_to_json(p));
  j["director"] = json::array();
  for (const auto& p : m.director) j["director"].push_back(person_to_json(p));
  j["theme_keywords"] = m.theme_keywords;
  return j;
}

Scenario scenario_from_json(const json& j, std::size_t index) {
  const std::string where = "scenarios[" + std::to_string(index) + "]";
  Scenario s;
  s.scenario_id = required<std::string>(j, "scenario_id", where);
  const std::string swhere = "scenario '" + s.scenario_id + "'";
  s.movie_id = required<std::string>(j, "movie_id", swhere);
  const json s1 = required<json>(j, "s1", swhere);
  s.s1.pattern = parse_s1_pattern(required<std::string>(s1, "pattern", swhere + " s1"));
  s.s1.text = required<std::string>(s1, "text", swhere + " s1");
  if (s1.contains("person") && !s1.at("person").is_null()) {
    s.s1.person = person_from_json(s1.at("person"), swhere + " s1.person");
  }
  if (s1.contains("theme") && !s1.at("theme").is_null()) {
    s.s1.theme = required<std::string>(s1, "theme", swhere + " s1");
  }
  s.s2 = required<std::string>(j, "s2", swhere);
  s.s3 = required<std::string>(j, "s3", swhere);
  s.s4 = required<std::string>(j, "s4", swhere);
  s.s5_pool = required<std::vector<std::string>>(j, "s5_pool", swhere);
  if (j.contains("consent_variants") && !j.at("consent_variants").is_null()) {
    for (const auto& [key, value] : j.at("consent_variants").items()) {
      const Slot slot = parse_slot(key);
      if (slot != Slot::S3 && slot != Slot::S4) {
        throw ValidationError(swhere + ": consent variants exist only for S3 and S4");
      }
      s.consent_variants[slot] = value.get<std::string>();
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["scenario_id"] = s.scenario_id;
  j["movie_id"] = s.movie_id;
  json s1;
  s1["pattern"] = to_string(s.s1.pattern);
  s1["text"] = s.s1.text;
  if (s.s1.person) s1["person"] = person_to_json(*s.s1.person);
  if (s.s1.theme) s1["theme"] = *s.s1.theme;
  j["s1"] = s1;
  j["s2"] = s.s2;
  j["s3"] = s.s3;
  j["s4"] = s.s4;
  j["s5_pool"] = s.s5_pool;
  if (!s.consent_variants.empty()) {
    json variants = json::object();
    for (const auto& [slot, text] : s.consent_variants) variants[std::string(to_string(slot))] = text;
    j["consent_variants"] = variants;
  }
  return j;
}

void validate_person(const PersonRef& p, const std::string& where) {
  if (p.name.empty()) throw ValidationError(where + ": person name is empty");
  if (p.profile_sentence && !text::ends_with_terminal_punctuation(*p.profile_sentence)) {
    throw ValidationError(where + ": profile of '" + p.name +
                          "' must be one sentence ending in terminal punctuation");
  }
}

}  // namespace

int current_year() {
  const auto now = std::chrono::system_clock::now();
  const std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(now)};
  return static_cast<int>(ymd.year());
}

const MovieRecord* CatalogFile::find_movie(std::string_view movie_id) const {
  for (const auto& m : movies) {
    if (m.movie_id == movie_id) return &m;
  }
  return nullptr;
}

const Scenario* CatalogFile::find_scenario(std::string_view scenario_id) const {
  for (const auto& s : scenarios) {
    if (s.scenario_id == scenario_id) return &s;
  }
  return nullptr;
}

void validate_catalog(const CatalogFile& catalog) {
  if (catalog.scenarios.empty()) throw ValidationError("catalog has no scenarios");
  const int max_year = current_year() + 2;
  std::set<std::string> movie_ids;
  for (const auto& m : catalog.movies) {
    const std::string where = "movie '" + m.movie_id + "'";
    if (m.movie_id.empty()) throw ValidationError("movie with empty movie_id");
    if (!movie_ids.insert(m.movie_id).second) {
      throw ValidationError("duplicate movie_id '" + m.movie_id + "'");
    }
    if (m.title.empty()) throw ValidationError(where + ": empty title");
    if (m.release_year && (*m.release_year < kEarliestReleaseYear || *m.release_year > max_year)) {
      throw ValidationError(where + ": release_year " + std::to_string(*m.release_year) +
                            " outside [" + std::to_string(kEarliestReleaseYear) + ", " +
                            std::to_string(max_year) + "]");
    }
    for (const auto& p : m.cast) validate_person(p, where);
    for (const auto& p : m.director) validate_person(p, where);
  }

  std::set<std::string> scenario_ids;
  std::set<std::string> movies_with_scenarios;
  for (const auto& s : catalog.scenarios) {
    const std::string where = "scenario '" + s.scenario_id + "'";
    if (s.scenario_id.empty()) throw ValidationError("scenario with empty scenario_id");
    if (!scenario_ids.insert(s.scenario_id).second) {
      throw ValidationError("duplicate scenario_id '" + s.scenario_id + "'");
    }
    if (!movie_ids.contains(s.movie_id)) {
      throw ValidationError(where + ": dangling reference to unknown movie '" + s.movie_id + "'");
    }
    movies_with_scenarios.insert(s.movie_id);
    if (s.s1.text.empty() || s.s2.empty() || s.s3.empty() || s.s4.empty()) {
      throw ValidationError(where + ": every slot S1..S4 needs text");
    }
    if (s.s5_pool.empty()) throw ValidationError(where + ": s5_pool is empty");
    for (const auto& line : s.s5_pool) {
      if (line.empty()) throw ValidationError(where + ": empty entry in s5_pool");
    }
    if (s.s1.pattern == S1Pattern::T3 && !s.s1.person) {
      throw ValidationError(where + ": T3 opening requires a person");
    }
    if (s.s1.pattern == S1Pattern::T2 && (!s.s1.theme || s.s1.theme->empty())) {
      throw ValidationError(where + ": T2 opening requires a theme");
    }
    if (s.s1.person) validate_person(*s.s1.person, where);
    for (const auto& [slot, variant] : s.consent_variants) {
      if (slot != Slot::S3 && slot != Slot::S4) {
        throw ValidationError(where + ": consent variants exist only for S3 and S4");
      }
      if (variant.empty()) throw ValidationError(where + ": empty consent variant");
    }
  }
  for (const auto& id : movie_ids) {
    if (!movies_with_scenarios.contains(id)) {
      throw ValidationError("movie '" + id + "' has no scenario");
    }
  }
}

CatalogFile parse_catalog(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(document, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("catalog parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  if (!root.is_object()) throw ValidationError("catalog root must be an object");
  const int version = required<int>(root, "format_version", "catalog");
  if (version != kCatalogFormatVersion) {
    throw ValidationError("unsupported catalog format_version " + std::to_string(version));
  }
  CatalogFile catalog;
  const json movies = required<json>(root, "movies", "catalog");
  const json scenarios = required<json>(root, "scenarios", "catalog");
  if (!movies.is_array() || !scenarios.is_array()) {
    throw ValidationError("catalog: 'movies' and 'scenarios' must be arrays");
  }
  for (std::size_t i = 0; i < movies.size(); ++i) catalog.movies.push_back(movie_from_json(movies[i], i));
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    catalog.scenarios.push_back(scenario_from_json(scenarios[i], i));
  }
  validate_catalog(catalog);
  return catalog;
}

CatalogFile load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open catalog '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str());
}

nlohmann::json to_json(const CatalogFile& catalog) {
  json root;
  root["format_version"] = kCatalogFormatVersion;
  root["movies"] = json::array();
  for (const auto& m : catalog.movies) root["movies"].push_back(movie_to_json(m));
  root["scenarios"] = json::array();
  for (const auto& s : catalog.scenarios) root["scenarios"].push_back(scenario_to_json(s));
  return root;
}

std::string serialize_catalog(const CatalogFile& catalog) { return to_json(catalog).dump(2) + "\n"; }

}  // namespace uisdial::catalog
