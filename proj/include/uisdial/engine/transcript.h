#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/domain/types.h"
#include "uisdial/engine/rules.h"

namespace uisdial::engine {

inline constexpr int kTranscriptFormatVersion = 1;

struct UisEstimate {
  double score = 0.0;
  Judgment judgment = Judgment::Neutral;
  bool failed = false;  // estimator error, degraded to Neutral

  friend bool operator==(const UisEstimate&, const UisEstimate&) = default;
};

using UisSnapshot = std::array<UisEstimate, 3>;

// One line of the transcript log. System turns carry the rule diagnostics;
// user turns carry the UIS estimates made on them.
struct TurnRecord {
  int turn = 1;
  Role role = Role::System;
  std::string text;
  std::optional<Slot> slot;
  std::string scenario_id;  // empty before a movie is chosen
  std::optional<UisSnapshot> uis;
  std::vector<RuleId> fired_rules;
  std::string counterfactual_text;  // system turns only
  std::uint64_t rng_draws = 0;      // generator draws consumed so far

  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

struct TranscriptHeader {
  std::string session_id;
  std::uint64_t seed = 0;
  bool rules_enabled = true;
  std::string selection_path;

  friend bool operator==(const TranscriptHeader&, const TranscriptHeader&) = default;
};

struct Transcript {
  TranscriptHeader header;
  std::vector<TurnRecord> turns;

  std::vector<std::string> user_texts() const;
  std::vector<Utterance> utterances() const;
  bool finished() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

nlohmann::json to_json(const TranscriptHeader& header);
nlohmann::json to_json(const TurnRecord& record);
nlohmann::json uis_to_json(const UisSnapshot& snapshot);

// Newline-delimited: a {"type":"header"} line, then one {"type":"turn"} line
// per turn. An optional {"type":"end"} line marks a finished session.
void write_header(std::ostream& out, const TranscriptHeader& header);
void write_turn(std::ostream& out, const TurnRecord& record);
void write_transcript(std::ostream& out, const Transcript& transcript);
std::string serialize_transcript(const Transcript& transcript);

Transcript parse_transcript(std::istream& in);
Transcript load_transcript(const std::filesystem::path& path);
void save_transcript(const std::filesystem::path& path, const Transcript& transcript);

}  // namespace uisdial::engine
