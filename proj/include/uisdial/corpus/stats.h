#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/corpus/corpus.h"

namespace uisdial::corpus {

// Score histogram for one kind; bin i holds score (3 - i), so index 0 is +3.
struct ScoreHistogram {
  UisKind kind = UisKind::Knowledge;
  std::array<std::size_t, 7> counts{};
  std::array<double, 7> percents{};  // one decimal, sums to exactly 100.0

  static int score_of_bin(std::size_t bin) { return 3 - static_cast<int>(bin); }
};

// Dialogue-level totals. Token counts are whitespace tokens.
struct CorpusTotals {
  std::size_t dialogues = 0;
  std::size_t system_utterances = 0;
  std::size_t user_utterances = 0;
  std::size_t unique_system_utterances = 0;
  std::size_t unique_user_utterances = 0;
  std::size_t system_tokens = 0;
  std::size_t user_tokens = 0;
  std::size_t unique_system_tokens = 0;
  std::size_t unique_user_tokens = 0;
  double avg_turns = 0.0;
};

struct StatsReport {
  CorpusTotals totals;
  std::array<ScoreHistogram, 3> histograms;
};

StatsReport corpus_stats(const std::vector<AnnotatedUtterance>& records);

// Percentages rounded to one decimal with largest-remainder apportioning so
// the rounded values sum to 100.0 (all zeros for an empty histogram).
std::array<double, 7> rounded_percents(const std::array<std::size_t, 7>& counts);

std::string render_stats(const StatsReport& report);
nlohmann::json to_json(const StatsReport& report);

}  // namespace uisdial::corpus
