#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "uisdial/catalog/catalog.h"
#include "uisdial/catalog/selection.h"
#include "uisdial/domain/errors.h"
#include "uisdial/domain/rng.h"
#include "uisdial/engine/rules.h"
#include "uisdial/engine/transcript.h"
#include "uisdial/estimator/estimator.h"

namespace uisdial::engine {

class SessionFinishedError : public Error {
 public:
  SessionFinishedError() : Error("session_finished", "the dialogue has already finished") {}
};

class ReplayMismatchError : public Error {
 public:
  explicit ReplayMismatchError(const std::string& message) : Error("replay_mismatch", message) {}
};

struct EngineConfig {
  estimator::EstimatorConfig estimator;
  bool rules_enabled = true;
  double random_selection_probability = 0.2;
  std::string consent_suffix = std::string(kDefaultConsentSuffix);
  // Experimental: answer title/year/director/cast questions from the catalog.
  bool answer_questions = true;

  void validate() const;
};

// Upper bound on system turns: 5 scenario slots, 2 preference questions.
inline constexpr int kMaxSystemTurns = 8;

enum class Phase { AwaitStart, InitialQuestionAsked, InScenario, PostS5Done };

std::string_view to_string(Phase phase);

struct EngineReply {
  std::string text;
  Slot slot = Slot::S1;
  std::vector<RuleId> fired_rules;
  std::string counterfactual_text;
  std::optional<UisSnapshot> uis_snapshot;  // absent for the opening turn
  std::string scenario_id;
  int turn_index = 1;
  bool done = false;
};

struct DialogueState {
  std::string session_id;
  Phase phase = Phase::AwaitStart;
  std::optional<Slot> slot;               // current slot while InScenario
  std::optional<std::size_t> scenario;    // index into the catalog
  catalog::SelectionPath selection_path = catalog::SelectionPath::Random;
  std::optional<catalog::InitialQuestion> selection_question;
  std::optional<catalog::InitialQuestion> pending_question;
  bool topic_change_pending = false;
  std::set<Slot> knowledge_chain;  // slots followed by a Has-knowledge turn
  int topic_changes_used = 0;
  bool rules_enabled = true;
  Rng rng;
  Transcript transcript;

  bool done() const { return phase == Phase::PostS5Done; }
  int system_turns() const;
};

// Supplies the profile sentence for rule I; nullopt skips the rule.
using ProfileProvider = std::function<std::optional<std::string>(const catalog::PersonRef&)>;

// Scenario-driven recommendation dialogue with UIS-based response changes.
//
// Each step estimates all three UIS kinds on the user turn, thresholds them,
// advances the scenario, and rewrites the outgoing utterance with the rules.
// The same utterance without rewriting is kept as counterfactual_text.
//
// Random draws, in order:
//   start:              bernoulli(random ratio); then 1 draw (scenario) on the
//                       random branch or 2 draws (question kind, role)
//   preference answer:  1 draw (movie), 1 draw (scenario) or 1 fallback draw
//   after S1:           softener index, question kind, question role
//   after S4:           S5 pool index, watch-again index, modest index
// The draws after S1 and S4 happen whether or not a rule fires, so tracks with
// and without rules stay aligned until a topic change.
//
// The engine is immutable; concurrent sessions may share one instance.
class DialogueEngine {
 public:
  DialogueEngine(std::shared_ptr<const catalog::CatalogFile> catalog,
                 std::shared_ptr<const estimator::Estimator> estimator, EngineConfig config,
                 ProfileProvider profiles = {});

  std::pair<DialogueState, EngineReply> start_session(std::uint64_t seed,
                                                      std::string session_id = "session") const;

  // Throws SessionFinishedError after S5 and ValidationError on empty text.
  EngineReply step(DialogueState& state, std::string_view user_text) const;

  // Scores and judgments for one user turn; estimator errors become Neutral.
  UisSnapshot estimate_all(const DialogueState& state, std::string_view user_text) const;

  const catalog::CatalogFile& catalog() const { return *catalog_; }
  const EngineConfig& config() const { return config_; }

 private:
  EngineReply emit(DialogueState& state, std::string text, std::string counterfactual, Slot slot,
                   std::vector<RuleId> fired, std::optional<UisSnapshot> snapshot) const;
  std::optional<std::string> profile_for(const catalog::PersonRef& person) const;

  std::shared_ptr<const catalog::CatalogFile> catalog_;
  std::shared_ptr<const estimator::Estimator> estimator_;
  EngineConfig config_;
  ProfileProvider profiles_;
};

// Experimental lookup answers for questions about the current movie.
std::optional<std::string> answer_lookup_question(const catalog::MovieRecord& movie,
                                                  std::string_view user_text);

// Re-runs a logged session from its seed and user turns. With rules_enabled
// false the result is the no-change track. The scenario of every system turn
// is checked against the log until the tracks can legitimately diverge (a
// topic change fired in the log while rules are disabled in the replay).
// User turns left over after the replay finishes are ignored.
std::vector<EngineReply> replay(const Transcript& log, const DialogueEngine& engine,
                                bool rules_enabled);

}  // namespace uisdial::engine
