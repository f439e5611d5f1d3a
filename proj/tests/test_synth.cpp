#include "catch_amalgamated.hpp"

#include "test_support.h"
#include "uisdial/catalog/catalog.h"
#include "uisdial/synth/synth.h"

using namespace uisdial;
using namespace uisdial::synth;

TEST_CASE("generated corpus shape", "[synth]") {
  const auto c = generate_corpus({.dialogues = 30, .seed = 2});
  CHECK(c.records.size() == 150);
  CHECK(corpus::dialogue_ids(c.records).size() == 30);
  CHECK_NOTHROW(catalog::validate_catalog(c.catalog));
  for (const auto& r : c.records) {
    CHECK_FALSE(r.text.empty());
    CHECK(std::isupper(static_cast<unsigned char>(r.text[0])));
    CHECK_FALSE(r.context.empty());
    CHECK(r.context.front().role == Role::System);
    for (UisKind k : kAllKinds) {
      const auto& t = r.label(k);
      // Noise-free labels are unanimous.
      CHECK(t.a1 == t.a2);
      CHECK(t.a2 == t.a3);
    }
  }
}

TEST_CASE("generation is a pure function of the config", "[synth]") {
  const SynthConfig config{.dialogues = 12, .noise = 0.1, .conflict_rate = 0.2, .seed = 8};
  CHECK(generate_corpus(config).records == generate_corpus(config).records);
  auto other = config;
  other.seed = 9;
  CHECK(generate_corpus(other).records != generate_corpus(config).records);
}

TEST_CASE("planted conflicts filter to the stated share", "[synth][property]") {
  const auto c = generate_corpus({.dialogues = 200, .conflict_rate = 0.2, .seed = 1});
  const double full = static_cast<double>(c.records.size());
  for (UisKind k : kAllKinds) {
    const auto filtered = corpus::filter_corpus(c.records, k);
    CHECK(std::abs(filtered.size() / full - 0.8) <= 0.02);
    // Idempotent.
    CHECK(corpus::filter_corpus(filtered, k) == filtered);
    // Filtering one kind leaves the other kinds' labels untouched.
    for (UisKind other : kAllKinds) {
      if (other == k) continue;
      std::size_t conflicted_before = 0, conflicted_after = 0;
      for (const auto& r : c.records) conflicted_before += is_conflicted(r.label(other)) ? 1 : 0;
      for (const auto& r : filtered) conflicted_after += is_conflicted(r.label(other)) ? 1 : 0;
      CHECK(conflicted_before == static_cast<std::size_t>(std::llround(0.2 * full)));
      CHECK(conflicted_after > 0);
    }
  }
}

TEST_CASE("synth config validation", "[synth]") {
  CHECK_THROWS_AS(SynthConfig{.dialogues = 0}.validate(), ValidationError);
  CHECK_THROWS_AS(SynthConfig{.noise = 1.5}.validate(), ValidationError);
  CHECK_THROWS_AS(SynthConfig{.conflict_rate = -0.1}.validate(), ValidationError);
}

TEST_CASE("written corpus reloads", "[synth]") {
  uisdial::testing::TempDir dir;
  const auto c = generate_corpus({.dialogues = 5, .seed = 3});
  write_synth_corpus(dir.path(), c);
  CHECK(corpus::load_corpus(dir.path() / "corpus.jsonl") == c.records);
  CHECK(catalog::load_catalog(dir.path() / "catalog.json") == c.catalog);
  CHECK(std::filesystem::exists(dir.path() / "manifest.json"));
}
