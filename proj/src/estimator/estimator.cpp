#include "uisdial/estimator/estimator.h"

#include <algorithm>

namespace uisdial::estimator {

EstimationRequest make_request(UisKind kind, std::string target,
                               const std::vector<Utterance>& chronological_context, int window,
                               int turn_index, std::optional<S1Pattern> s1_pattern) {
  EstimationRequest request;
  request.kind = kind;
  request.target = std::move(target);
  request.turn_index = turn_index;
  request.s1_pattern = s1_pattern;
  const auto limit = static_cast<std::size_t>(std::max(window, 0));
  for (auto it = chronological_context.rbegin();
       it != chronological_context.rend() && request.context.size() < limit; ++it) {
    request.context.push_back({it->role, it->text});
  }
  return request;
}

const ContextTurn* last_system_turn(const EstimationRequest& request, int window) {
  const auto limit = std::min(request.context.size(), static_cast<std::size_t>(std::max(window, 0)));
  for (std::size_t i = 0; i < limit; ++i) {
    if (request.context[i].role == Role::System) return &request.context[i];
  }
  return nullptr;
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Lexicon: return "lexicon";
    case Backend::Linear: return "linear";
    case Backend::External: return "external";
  }
  return "?";
}

Backend parse_backend(std::string_view text) {
  if (text == "lexicon") return Backend::Lexicon;
  if (text == "linear") return Backend::Linear;
  if (text == "external") return Backend::External;
  throw ValidationError("unknown estimator backend '" + std::string(text) + "'");
}

void EstimatorConfig::validate() const {
  for (auto kind : kAllKinds) {
    const auto& t = thresholds_for(kind);
    if (!(t.positive > 0.0 && t.negative < 0.0)) {
      throw ValidationError("thresholds for " + std::string(to_string(kind)) +
                            " must satisfy positive > 0 > negative");
    }
  }
  if (context_window < 0) throw ValidationError("context_window must be >= 0");
}

Judgment judge(double score, const Thresholds& thresholds) {
  if (score > thresholds.positive) return Judgment::Has;
  if (score < thresholds.negative) return Judgment::HasNot;
  return Judgment::Neutral;
}

Judgment judge(const UisScore& score, const EstimatorConfig& config) {
  return judge(score.value(), config.thresholds_for(score.kind()));
}

}  // namespace uisdial::estimator
