#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uisdial/catalog/catalog.h"
#include "uisdial/domain/rng.h"

namespace uisdial::catalog {

enum class PreferenceKind { FavoritePerson, FavoriteGenre, DomesticVsForeign };

std::string_view to_string(PreferenceKind kind);

// One of the opening preference questions. person_role is set exactly when
// kind == FavoritePerson.
struct InitialQuestion {
  PreferenceKind kind = PreferenceKind::FavoriteGenre;
  std::optional<PersonRole> person_role;
  std::string text;

  friend bool operator==(const InitialQuestion&, const InitialQuestion&) = default;
};

InitialQuestion make_initial_question(PreferenceKind kind,
                                      std::optional<PersonRole> role = std::nullopt);

// Draws a question kind uniformly, then a person role uniformly. Always
// consumes exactly two draws so callers keep a fixed draw count.
InitialQuestion draw_initial_question(Rng& rng);

enum class SelectionPath { Random, PreferenceMatch, PreferenceFallback };

std::string_view to_string(SelectionPath path);

struct ScenarioPick {
  std::size_t scenario_index = 0;
  SelectionPath path = SelectionPath::Random;
};

// Uniform over all scenarios. Throws ValidationError on an empty catalog.
ScenarioPick pick_movie_random(const CatalogFile& catalog, Rng& rng);

// Keyword match of the answer against the question's attribute. Among
// matching movies one is drawn uniformly, then one of its scenarios. When
// nothing matches the pick falls back to pick_movie_random and is flagged.
// exclude_movie_id removes a movie from the candidates (used after a topic
// change) unless it is the only movie in the catalog.
ScenarioPick pick_movie_by_preference(const CatalogFile& catalog, const InitialQuestion& question,
                                      std::string_view answer, Rng& rng,
                                      std::string_view exclude_movie_id = {});

// Movie ids whose attributes match the answer, in catalog order.
std::vector<std::string> matching_movies(const CatalogFile& catalog,
                                         const InitialQuestion& question,
                                         std::string_view answer);

}  // namespace uisdial::catalog
