#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/catalog/catalog.h"
#include "uisdial/corpus/corpus.h"

namespace uisdial::synth {

struct SynthConfig {
  std::size_t dialogues = 200;
  int user_turns = 5;          // one user reply after each of S1..S5
  double noise = 0.0;          // per-label probability of a +-1 shift
  double conflict_rate = 0.0;  // share of records per kind given a 1/-1 split
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthCorpus {
  catalog::CatalogFile catalog;
  std::vector<corpus::AnnotatedUtterance> records;
  nlohmann::json manifest;
};

// Scenario dialogues whose user turns join one clause per UIS kind. Each
// clause comes from a phrase bank for a planted band (Has, Neutral, HasNot)
// and the band sets the labels: unanimous 1, 0 or -1 before noise.
//
// Conflicts are planted independently per kind on exactly
// round(conflict_rate * records) records as a permutation of (1, -1, band),
// so filtering one kind keeps the remainder and leaves other kinds alone.
// Output is a pure function of the config.
SynthCorpus generate_corpus(const SynthConfig& config);

// Small catalog the generated dialogues draw their system turns from.
catalog::CatalogFile synthetic_catalog();

// Writes corpus.jsonl, catalog.json and manifest.json into dir.
void write_synth_corpus(const std::filesystem::path& dir, const SynthCorpus& corpus);

}  // namespace uisdial::synth
