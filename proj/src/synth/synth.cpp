#include "uisdial/synth/synth.h"

#include <array>
#include <cmath>
#include <fstream>
#include <string_view>

#include <fmt/format.h>

#include "uisdial/domain/errors.h"
#include "uisdial/domain/rng.h"

namespace uisdial::synth {

namespace {

using Bank = std::array<std::array<std::string_view, 4>, 3>;  // [band][variant]

// Band order: Has, Neutral, HasNot.
constexpr Bank kKnowledgeBank = {{
    {"I have seen it", "I watched it last year", "I know that one well", "I saw it in theaters"},
    {"it might ring a bell", "it sounds vaguely familiar", "perhaps I heard about it",
     "I may have come across it"},
    {"I have never heard of it", "no idea what that is", "that title is new to me",
     "never came across it"},
}};

constexpr Bank kInterestBank = {{
    {"it sounds exciting", "I really want to watch it", "I love that kind of story",
     "that sounds great"},
    {"it could go either way", "it is fine I guess", "hard to say for me", "so so maybe"},
    {"it sounds dull", "not my thing", "it seems boring", "I could not care less"},
}};

constexpr Bank kEngagementBank = {{
    {"tell me more please", "what else can you say", "keep going", "give me details"},
    {"hmm", "well", "alright then", "let me think"},
    {"whatever", "fine", "sure", "ok"},
}};

constexpr std::array<const Bank*, 3> kBanks = {&kKnowledgeBank, &kInterestBank, &kEngagementBank};

int band_label(std::size_t band) { return band == 0 ? 1 : band == 1 ? 0 : -1; }

std::string compose(const std::array<std::string_view, 3>& clauses) {
  std::string out = fmt::format("{}, {}, {}.", clauses[0], clauses[1], clauses[2]);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

LabelTriplet permuted(int a, int b, int c, std::size_t perm) {
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  const std::array<int, 3> v = {a, b, c};
  const auto& p = kPerms[perm];
  return LabelTriplet{v[p[0]], v[p[1]], v[p[2]]};
}

int shift_label(int value, Rng& rng) {
  if (value == 1) return 0;
  if (value == -1) return 0;
  return rng.bernoulli(0.5) ? 1 : -1;
}

}  // namespace

void SynthConfig::validate() const {
  if (dialogues == 0) throw ValidationError("synthetic corpus needs at least one dialogue");
  if (user_turns < 1 || user_turns > 5) throw ValidationError("user_turns must lie in [1, 5]");
  if (!(noise >= 0.0 && noise <= 1.0)) throw ValidationError("noise must lie in [0, 1]");
  if (!(conflict_rate >= 0.0 && conflict_rate <= 1.0)) {
    throw ValidationError("conflict_rate must lie in [0, 1]");
  }
}

catalog::CatalogFile synthetic_catalog() {
  using namespace catalog;
  CatalogFile c;
  struct Seed {
    const char* id;
    const char* title;
    int year;
    const char* genre;
    Country country;
    const char* person;
    PersonRole role;
    const char* theme;
  };
  const std::array<Seed, 4> seeds = {{
      {"syn-harbor", "Harbor Lights", 1998, "drama", Country::Foreign, "Elena Marsh",
       PersonRole::Actress, "the sea"},
      {"syn-orbit", "Orbit Nine", 2011, "science fiction", Country::Foreign, "Tomas Reyes",
       PersonRole::Director, "space travel"},
      {"syn-lantern", "Paper Lantern", 2005, "fantasy", Country::Domestic, "Kenji Aoyama",
       PersonRole::Actor, "old festivals"},
      {"syn-sprint", "Last Sprint", 2019, "comedy", Country::Other, "Dana Holt",
       PersonRole::Actress, "running"},
  }};
  for (const auto& s : seeds) {
    MovieRecord m;
    m.movie_id = s.id;
    m.title = s.title;
    m.release_year = s.year;
    m.genres = {s.genre};
    m.country = s.country;
    PersonRef person{s.person, s.role, std::nullopt};
    if (s.role == PersonRole::Director) {
      m.director = {person};
    } else {
      m.cast = {person};
    }
    m.theme_keywords = {s.theme};
    c.movies.push_back(m);

    const std::array<S1Pattern, 3> patterns = {S1Pattern::T1, S1Pattern::T2, S1Pattern::T3};
    for (S1Pattern pattern : patterns) {
      Scenario sc;
      sc.scenario_id = fmt::format("{}-{}", s.id, to_string(pattern));
      sc.movie_id = s.id;
      sc.s1.pattern = pattern;
      if (pattern == S1Pattern::T1) {
        sc.s1.text = fmt::format("Have you heard the news that {} is showing again?", s.title);
      } else if (pattern == S1Pattern::T2) {
        sc.s1.text = fmt::format("Are you interested in {}?", s.theme);
        sc.s1.theme = s.theme;
      } else {
        sc.s1.text = fmt::format("Do you know {}?", s.person);
        sc.s1.person = person;
      }
      sc.s2 = fmt::format("I recommend {}.", s.title);
      sc.s3 = fmt::format("It is a {} movie.", s.genre);
      sc.s4 = "The story keeps you guessing until the end.";
      sc.s5_pool = {"Please give it a try.", "I think you will enjoy it."};
      c.scenarios.push_back(sc);
    }
  }
  return c;
}

SynthCorpus generate_corpus(const SynthConfig& config) {
  config.validate();
  SynthCorpus out;
  out.catalog = synthetic_catalog();
  Rng rng(config.seed);

  std::vector<std::array<std::size_t, 3>> bands;
  for (std::size_t d = 0; d < config.dialogues; ++d) {
    const auto& sc = out.catalog.scenarios[rng.uniform_index(out.catalog.scenarios.size())];
    const std::array<std::string, 5> system = {sc.s1.text, sc.s2, sc.s3, sc.s4, sc.s5_pool[0]};
    const std::string dialogue_id = fmt::format("syn-{:05d}", d + 1);
    std::vector<Utterance> history;
    for (int k = 0; k < config.user_turns; ++k) {
      const int sys_turn = 2 * k + 1;
      history.push_back(Utterance{Role::System, system[static_cast<std::size_t>(k)], sys_turn,
                                  static_cast<Slot>(k)});
      std::array<std::size_t, 3> band{};
      std::array<std::string_view, 3> clauses{};
      for (std::size_t kind = 0; kind < 3; ++kind) {
        band[kind] = rng.uniform_index(3);
        clauses[kind] = (*kBanks[kind])[band[kind]][rng.uniform_index(4)];
      }
      corpus::AnnotatedUtterance rec;
      rec.dialogue_id = dialogue_id;
      rec.turn_index = sys_turn + 1;
      rec.text = compose(clauses);
      rec.s1_pattern = sc.s1.pattern;
      rec.context = history;
      for (std::size_t kind = 0; kind < 3; ++kind) {
        const int v = band_label(band[kind]);
        rec.labels[kind] = LabelTriplet{v, v, v};
      }
      history.push_back(Utterance{Role::User, rec.text, rec.turn_index, std::nullopt});
      bands.push_back(band);
      out.records.push_back(std::move(rec));
    }
  }

  const std::size_t n = out.records.size();
  const auto n_conflicts =
      static_cast<std::size_t>(std::llround(config.conflict_rate * static_cast<double>(n)));
  std::array<std::vector<bool>, 3> conflicted;
  for (std::size_t kind = 0; kind < 3; ++kind) {
    conflicted[kind].assign(n, false);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < n_conflicts; ++i) {
      const std::size_t j = i + rng.uniform_index(n - i);
      std::swap(idx[i], idx[j]);
      conflicted[kind][idx[i]] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!conflicted[kind][i]) continue;
      out.records[i].labels[kind] =
          permuted(1, -1, band_label(bands[i][kind]), rng.uniform_index(6));
    }
  }

  if (config.noise > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t kind = 0; kind < 3; ++kind) {
        if (conflicted[kind][i]) continue;
        auto& t = out.records[i].labels[kind];
        for (int* a : {&t.a1, &t.a2, &t.a3}) {
          if (rng.bernoulli(config.noise)) *a = shift_label(*a, rng);
        }
      }
    }
  }

  nlohmann::json per_kind = nlohmann::json::object();
  for (UisKind kind : kAllKinds) per_kind[std::string(to_string(kind))] = n_conflicts;
  out.manifest = {{"generator", "uisdial-synth"},
                  {"version", 1},
                  {"dialogues", config.dialogues},
                  {"user_turns", config.user_turns},
                  {"records", n},
                  {"noise", config.noise},
                  {"conflict_rate", config.conflict_rate},
                  {"conflicted_records", per_kind},
                  {"seed", config.seed},
                  {"draws", rng.draws()}};
  return out;
}

void write_synth_corpus(const std::filesystem::path& dir, const SynthCorpus& corpus) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  corpus::save_corpus(dir / "corpus.jsonl", corpus.records);
  {
    std::ofstream out(dir / "catalog.json", std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / "catalog.json").string());
    out << catalog::serialize_catalog(corpus.catalog) << '\n';
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << corpus.manifest.dump(2) << '\n';
}

}  // namespace uisdial::synth
