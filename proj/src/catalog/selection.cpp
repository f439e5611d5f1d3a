#include "uisdial/catalog/selection.h"

#include <array>
#include <span>

#include "uisdial/domain/errors.h"
#include "uisdial/text/text.h"

namespace uisdial::catalog {

namespace {

constexpr std::array<std::string_view, 4> kDomesticWords = {"japanese", "japan", "domestic",
                                                            "local"};
constexpr std::array<std::string_view, 6> kForeignWords = {"foreign",  "overseas", "western",
                                                           "hollywood", "american", "international"};

// Position of the earliest whole-word occurrence of any word, or npos.
std::size_t earliest_word(std::string_view answer, std::span<const std::string_view> words) {
  const std::string lower = text::to_lower(answer);
  std::size_t best = std::string::npos;
  for (auto w : words) {
    if (!text::contains_word_ci(lower, w)) continue;
    const std::size_t pos = lower.find(w);
    if (pos < best) best = pos;
  }
  return best;
}

std::optional<Country> country_preference(std::string_view answer) {
  const std::size_t domestic = earliest_word(answer, kDomesticWords);
  const std::size_t foreign = earliest_word(answer, kForeignWords);
  if (domestic == std::string::npos && foreign == std::string::npos) return std::nullopt;
  return domestic < foreign ? Country::Domestic : Country::Foreign;
}

// Full name, or the family name when it is at least three characters.
bool person_mentioned(const PersonRef& person, std::string_view answer) {
  if (text::contains_word_ci(answer, person.name)) return true;
  const auto parts = text::whitespace_tokens(person.name);
  if (parts.size() >= 2 && parts.back().size() >= 3) {
    return text::contains_word_ci(answer, parts.back());
  }
  return false;
}

bool movie_has_person(const MovieRecord& movie, std::string_view answer,
                      std::optional<PersonRole> role) {
  auto check = [&](const std::vector<PersonRef>& list) {
    for (const auto& p : list) {
      if (role && p.role != *role) continue;
      if (person_mentioned(p, answer)) return true;
    }
    return false;
  };
  return check(movie.director) || check(movie.cast);
}

}  // namespace

std::string_view to_string(PreferenceKind kind) {
  switch (kind) {
    case PreferenceKind::FavoritePerson: return "favorite_person";
    case PreferenceKind::FavoriteGenre: return "favorite_genre";
    case PreferenceKind::DomesticVsForeign: return "domestic_vs_foreign";
  }
  return "?";
}

std::string_view to_string(SelectionPath path) {
  switch (path) {
    case SelectionPath::Random: return "random";
    case SelectionPath::PreferenceMatch: return "preference_match";
    case SelectionPath::PreferenceFallback: return "preference_fallback";
  }
  return "?";
}

InitialQuestion make_initial_question(PreferenceKind kind, std::optional<PersonRole> role) {
  InitialQuestion q;
  q.kind = kind;
  switch (kind) {
    case PreferenceKind::FavoritePerson:
      q.person_role = role.value_or(PersonRole::Actor);
      q.text = "Who is your favorite " + std::string(to_string(*q.person_role)) + "?";
      break;
    case PreferenceKind::FavoriteGenre:
      q.text = "What is your favorite movie genre?";
      break;
    case PreferenceKind::DomesticVsForeign:
      q.text = "Which do you like better, Japanese or foreign movies?";
      break;
  }
  return q;
}

InitialQuestion draw_initial_question(Rng& rng) {
  static constexpr std::array<PreferenceKind, 3> kKinds = {
      PreferenceKind::FavoritePerson, PreferenceKind::FavoriteGenre,
      PreferenceKind::DomesticVsForeign};
  static constexpr std::array<PersonRole, 3> kRoles = {PersonRole::Actor, PersonRole::Actress,
                                                       PersonRole::Director};
  const PreferenceKind kind = kKinds[rng.uniform_index(kKinds.size())];
  const PersonRole role = kRoles[rng.uniform_index(kRoles.size())];
  return make_initial_question(kind, role);
}

ScenarioPick pick_movie_random(const CatalogFile& catalog, Rng& rng) {
  if (catalog.scenarios.empty()) throw ValidationError("cannot pick from an empty catalog");
  return {rng.uniform_index(catalog.scenarios.size()), SelectionPath::Random};
}

std::vector<std::string> matching_movies(const CatalogFile& catalog,
                                         const InitialQuestion& question,
                                         std::string_view answer) {
  std::vector<std::string> ids;
  switch (question.kind) {
    case PreferenceKind::FavoritePerson: {
      for (const auto& m : catalog.movies) {
        if (movie_has_person(m, answer, question.person_role)) ids.push_back(m.movie_id);
      }
      // The user may name a person of another role than the one asked about.
      if (ids.empty()) {
        for (const auto& m : catalog.movies) {
          if (movie_has_person(m, answer, std::nullopt)) ids.push_back(m.movie_id);
        }
      }
      break;
    }
    case PreferenceKind::FavoriteGenre: {
      for (const auto& m : catalog.movies) {
        for (const auto& genre : m.genres) {
          if (text::contains_word_ci(answer, genre)) {
            ids.push_back(m.movie_id);
            break;
          }
        }
      }
      break;
    }
    case PreferenceKind::DomesticVsForeign: {
      const auto wanted = country_preference(answer);
      if (!wanted) break;
      for (const auto& m : catalog.movies) {
        if (m.country == *wanted) ids.push_back(m.movie_id);
      }
      break;
    }
  }
  return ids;
}

ScenarioPick pick_movie_by_preference(const CatalogFile& catalog, const InitialQuestion& question,
                                      std::string_view answer, Rng& rng,
                                      std::string_view exclude_movie_id) {
  if (catalog.scenarios.empty()) throw ValidationError("cannot pick from an empty catalog");
  auto ids = matching_movies(catalog, question, answer);
  if (!exclude_movie_id.empty() && catalog.movies.size() > 1) {
    std::erase(ids, std::string(exclude_movie_id));
  }
  if (ids.empty()) {
    if (!exclude_movie_id.empty() && catalog.movies.size() > 1) {
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < catalog.scenarios.size(); ++i) {
        if (catalog.scenarios[i].movie_id != exclude_movie_id) others.push_back(i);
      }
      return {others[rng.uniform_index(others.size())], SelectionPath::PreferenceFallback};
    }
    auto pick = pick_movie_random(catalog, rng);
    pick.path = SelectionPath::PreferenceFallback;
    return pick;
  }
  const std::string& movie_id = ids[rng.uniform_index(ids.size())];
  std::vector<std::size_t> scenarios;
  for (std::size_t i = 0; i < catalog.scenarios.size(); ++i) {
    if (catalog.scenarios[i].movie_id == movie_id) scenarios.push_back(i);
  }
  return {scenarios[rng.uniform_index(scenarios.size())], SelectionPath::PreferenceMatch};
}

}  // namespace uisdial::catalog
