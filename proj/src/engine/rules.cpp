#include "uisdial/engine/rules.h"

#include <algorithm>

#include "uisdial/domain/errors.h"
#include "uisdial/text/text.h"

namespace uisdial::engine {

std::string_view to_string(RuleId rule) {
  switch (rule) {
    case RuleId::I: return "I";
    case RuleId::II: return "II";
    case RuleId::III: return "III";
    case RuleId::IV: return "IV";
    case RuleId::V: return "V";
    case RuleId::VI: return "VI";
    case RuleId::VII: return "VII";
    case RuleId::VIII: return "VIII";
  }
  return "?";
}

RuleId parse_rule_id(std::string_view text) {
  for (RuleId rule : kAllRules) {
    if (to_string(rule) == text) return rule;
  }
  throw ValidationError("unknown rule id '" + std::string(text) + "'");
}

std::string_view rule_label(RuleId rule) {
  switch (rule) {
    case RuleId::I: return "person profile";
    case RuleId::II: return "release year";
    case RuleId::III: return "consent tone";
    case RuleId::IV: return "watch again";
    case RuleId::V: return "softener";
    case RuleId::VI: return "topic change (theme)";
    case RuleId::VII: return "topic change (person)";
    case RuleId::VIII: return "modest tone";
  }
  return "?";
}

bool is_topic_change(RuleId rule) { return rule == RuleId::VI || rule == RuleId::VII; }

std::vector<RuleId> resolve_rule_conflicts(const std::set<RuleId>& triggered) {
  std::set<RuleId> kept = triggered;
  if (kept.count(RuleId::VI) || kept.count(RuleId::VII)) {
    kept.erase(RuleId::I);
    kept.erase(RuleId::V);
    // Both cannot trigger on one opening; keep the lower one if they do.
    if (kept.count(RuleId::VI) && kept.count(RuleId::VII)) kept.erase(RuleId::VII);
  }
  if (kept.count(RuleId::IV)) kept.erase(RuleId::VIII);
  return {kept.begin(), kept.end()};
}

std::string release_year_sentence(int year) {
  return "This movie was released in " + std::to_string(year) + ".";
}

std::string prepend_sentence(std::string_view prefix, std::string_view base) {
  std::string out(prefix);
  if (!out.empty() && !base.empty()) out += ' ';
  out += base;
  return out;
}

std::string consent_tone(std::string_view base, const std::optional<std::string>& authored,
                         std::string_view suffix) {
  if (authored && !authored->empty()) return *authored;
  std::string out = text::trim(base);
  while (!out.empty() && (out.back() == '.' || out.back() == '!' || out.back() == '?')) {
    out.pop_back();
  }
  out += suffix;
  return out;
}

std::string topic_change_utterance(std::string_view question_text) {
  return std::string(kTopicChangeAck) + " Then, " + text::decapitalize(question_text);
}

}  // namespace uisdial::engine
