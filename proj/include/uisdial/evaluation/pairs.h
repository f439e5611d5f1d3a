#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/domain/types.h"
#include "uisdial/engine/rules.h"
#include "uisdial/engine/transcript.h"

namespace uisdial::evaluation {

// The four answers of the utterance-wise naturalness vote.
enum class Vote { WithRc, WithoutRc, BothNatural, BothUnnatural };

inline constexpr std::array<Vote, 4> kAllVotes = {Vote::WithRc, Vote::WithoutRc,
                                                  Vote::BothNatural, Vote::BothUnnatural};

std::string_view to_string(Vote vote);  // "w-RC", "wo-RC", "natural", "unnatural"
Vote parse_vote(std::string_view text);

struct PairVote {
  std::string pair_id;
  engine::RuleId rule = engine::RuleId::I;
  Vote vote = Vote::BothNatural;

  friend bool operator==(const PairVote&, const PairVote&) = default;
};

std::vector<PairVote> parse_votes(std::istream& in);
std::vector<PairVote> load_votes(const std::filesystem::path& path);

struct TallyRow {
  std::optional<engine::RuleId> rule;  // nullopt for the overall row
  std::array<std::size_t, 4> counts{};  // indexed like kAllVotes
  std::size_t pairs = 0;                // distinct pair ids

  std::size_t total() const;
};

struct PairwiseTally {
  std::array<TallyRow, 8> rules;
  TallyRow overall;
};

// Counts per rule and overall. Throws ValidationError when one pair id is
// voted under two different rules.
PairwiseTally pairwise_tally(std::span<const PairVote> votes);

std::string render_tally(const PairwiseTally& tally);
nlohmann::json to_json(const PairwiseTally& tally);

struct EvalPair {
  std::string pair_id;  // "<session>#<turn>#<rule>"
  std::string session_id;
  int turn = 0;
  engine::RuleId rule = engine::RuleId::I;
  std::vector<Utterance> context;  // everything before the changed turn
  std::string with_rc;
  std::string without_rc;
};

// Every fired rule occurrence whose text differs from its counterfactual,
// sampled uniformly down to per_rule_cap per rule. Output is grouped by rule
// and keeps log order inside a rule; the same seed gives the same sample.
std::vector<EvalPair> extract_eval_pairs(const std::vector<engine::Transcript>& logs,
                                         std::size_t per_rule_cap, std::uint64_t seed);

nlohmann::json to_json(const EvalPair& pair);

}  // namespace uisdial::evaluation
