#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace uisdial::engine {

// Response-change rules, one per UIS situation:
//   I    person unknown after a T3 opening     -> prepend person profile to S2
//   II   movie unknown after S2                -> prepend release year to S3
//   III  movie known after S2 / S3             -> consent-tone S3 / S4
//   IV   movie known after S2, S3 and S4       -> S5 assumes the user saw it
//   V    no interest in T1 news                -> prepend a softener to S2
//   VI   no interest in T2 theme               -> abandon movie, ask a preference
//   VII  no interest in T3 person              -> abandon movie, ask for that role
//   VIII no engagement after S4                -> modest-tone S5
enum class RuleId : std::uint8_t { I = 1, II, III, IV, V, VI, VII, VIII };

inline constexpr std::array<RuleId, 8> kAllRules = {RuleId::I,  RuleId::II,  RuleId::III,
                                                    RuleId::IV, RuleId::V,   RuleId::VI,
                                                    RuleId::VII, RuleId::VIII};

std::string_view to_string(RuleId rule);
RuleId parse_rule_id(std::string_view text);
std::string_view rule_label(RuleId rule);

bool is_topic_change(RuleId rule);

// Deterministic precedence for rules triggered on the same turn:
// a topic change (VI, VII) suppresses the prepend rules (I, V); IV
// suppresses VIII. Everything else composes. Output is in application order
// (ascending rule number).
std::vector<RuleId> resolve_rule_conflicts(const std::set<RuleId>& triggered);

inline constexpr std::array<std::string_view, 2> kSoftenerPool = {
    "It seems to be quite well-known.", "It seems to be quite a hot topic."};
inline constexpr std::array<std::string_view, 2> kWatchAgainPool = {
    "You may want to watch this movie again.", "Please watch it again."};
inline constexpr std::array<std::string_view, 2> kModestPool = {
    "Trust me. You will like it.", "It may be unexpectedly interesting movie."};

inline constexpr std::string_view kTopicChangeAck = "I see.";
inline constexpr std::string_view kDefaultConsentSuffix = ", don't you think?";

std::string release_year_sentence(int year);

// "<prefix> <base>"
std::string prepend_sentence(std::string_view prefix, std::string_view base);

// Authored variant when present; otherwise trailing whitespace and terminal
// punctuation are stripped and the suffix appended.
std::string consent_tone(std::string_view base, const std::optional<std::string>& authored,
                         std::string_view suffix);

// "I see. Then, who is your favorite director?"
std::string topic_change_utterance(std::string_view question_text);

}  // namespace uisdial::engine
