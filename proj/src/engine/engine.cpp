#include "uisdial/engine/engine.h"

#include <cmath>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "uisdial/text/text.h"

namespace uisdial::engine {

void EngineConfig::validate() const {
  estimator.validate();
  if (!(random_selection_probability >= 0.0 && random_selection_probability <= 1.0)) {
    throw ValidationError("random_selection_probability must lie in [0, 1]");
  }
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::AwaitStart: return "await_start";
    case Phase::InitialQuestionAsked: return "initial_question_asked";
    case Phase::InScenario: return "in_scenario";
    case Phase::PostS5Done: return "done";
  }
  return "?";
}

int DialogueState::system_turns() const {
  int n = 0;
  for (const auto& t : transcript.turns) n += t.role == Role::System ? 1 : 0;
  return n;
}

namespace {

std::string join_names(const std::vector<catalog::PersonRef>& people) {
  std::string out;
  for (std::size_t i = 0; i < people.size(); ++i) {
    if (i > 0) out += i + 1 == people.size() ? " and " : ", ";
    out += people[i].name;
  }
  return out;
}

int next_turn_index(const DialogueState& state) {
  return state.transcript.turns.empty() ? 1 : state.transcript.turns.back().turn + 1;
}

}  // namespace

std::optional<std::string> answer_lookup_question(const catalog::MovieRecord& movie,
                                                  std::string_view user_text) {
  const std::string t = text::trim(user_text);
  if (t.empty() || t.back() != '?') return std::nullopt;
  if ((text::contains_word_ci(t, "when") &&
       (text::contains_ci(t, "release") || text::contains_ci(t, "come out") ||
        text::contains_ci(t, "came out"))) ||
      text::contains_ci(t, "what year")) {
    if (!movie.release_year) return std::nullopt;
    return "It was released in " + std::to_string(*movie.release_year) + ".";
  }
  if (text::contains_ci(t, "direct")) {
    if (movie.director.empty()) return std::nullopt;
    return "It was directed by " + join_names(movie.director) + ".";
  }
  if (text::contains_word_ci(t, "who") &&
      (text::contains_ci(t, "star") || text::contains_ci(t, "in it") ||
       text::contains_ci(t, "cast") || text::contains_ci(t, "actor") ||
       text::contains_ci(t, "actress"))) {
    if (movie.cast.empty()) return std::nullopt;
    return "It stars " + join_names(movie.cast) + ".";
  }
  if (text::contains_ci(t, "title") || text::contains_word_ci(t, "called") ||
      text::contains_ci(t, "name of")) {
    return "The title is \"" + movie.title + "\".";
  }
  return std::nullopt;
}

DialogueEngine::DialogueEngine(std::shared_ptr<const catalog::CatalogFile> catalog,
                               std::shared_ptr<const estimator::Estimator> estimator,
                               EngineConfig config, ProfileProvider profiles)
    : catalog_(std::move(catalog)),
      estimator_(std::move(estimator)),
      config_(std::move(config)),
      profiles_(std::move(profiles)) {
  if (!catalog_ || catalog_->scenarios.empty()) {
    throw ValidationError("the dialogue engine needs a catalog with at least one scenario");
  }
  if (!estimator_) throw ValidationError("the dialogue engine needs an estimator");
  config_.validate();
}

std::optional<std::string> DialogueEngine::profile_for(const catalog::PersonRef& person) const {
  if (person.profile_sentence && !person.profile_sentence->empty()) return person.profile_sentence;
  if (!profiles_) return std::nullopt;
  try {
    auto sentence = profiles_(person);
    if (sentence && !sentence->empty()) return sentence;
  } catch (const std::exception& e) {
    spdlog::warn("profile lookup for '{}' failed: {}", person.name, e.what());
  }
  return std::nullopt;
}

EngineReply DialogueEngine::emit(DialogueState& state, std::string text,
                                 std::string counterfactual, Slot slot,
                                 std::vector<RuleId> fired,
                                 std::optional<UisSnapshot> snapshot) const {
  if (state.system_turns() >= kMaxSystemTurns) {
    throw std::logic_error("dialogue exceeded the system turn bound");
  }
  EngineReply reply;
  reply.text = std::move(text);
  reply.counterfactual_text = std::move(counterfactual);
  reply.slot = slot;
  reply.fired_rules = std::move(fired);
  reply.uis_snapshot = snapshot;
  reply.scenario_id =
      state.scenario ? catalog_->scenarios[*state.scenario].scenario_id : std::string{};
  reply.turn_index = next_turn_index(state);
  reply.done = state.phase == Phase::PostS5Done;

  TurnRecord record;
  record.turn = reply.turn_index;
  record.role = Role::System;
  record.text = reply.text;
  record.slot = slot;
  record.scenario_id = reply.scenario_id;
  record.fired_rules = reply.fired_rules;
  record.counterfactual_text = reply.counterfactual_text;
  record.rng_draws = state.rng.draws();
  state.transcript.turns.push_back(std::move(record));
  return reply;
}

std::pair<DialogueState, EngineReply> DialogueEngine::start_session(std::uint64_t seed,
                                                                    std::string session_id) const {
  DialogueState state;
  state.session_id = std::move(session_id);
  state.rng = Rng(seed);
  state.rules_enabled = config_.rules_enabled;
  state.transcript.header.session_id = state.session_id;
  state.transcript.header.seed = seed;
  state.transcript.header.rules_enabled = state.rules_enabled;

  if (state.rng.bernoulli(config_.random_selection_probability)) {
    const auto pick = catalog::pick_movie_random(*catalog_, state.rng);
    state.scenario = pick.scenario_index;
    state.selection_path = catalog::SelectionPath::Random;
    state.phase = Phase::InScenario;
    state.slot = Slot::S1;
    state.transcript.header.selection_path = "random";
    const std::string& s1 = catalog_->scenarios[pick.scenario_index].s1.text;
    auto reply = emit(state, s1, s1, Slot::S1, {}, std::nullopt);
    return {std::move(state), std::move(reply)};
  }
  auto question = catalog::draw_initial_question(state.rng);
  state.pending_question = question;
  state.phase = Phase::InitialQuestionAsked;
  state.transcript.header.selection_path = "initial_question";
  auto reply = emit(state, question.text, question.text, Slot::InitialQuestion, {}, std::nullopt);
  return {std::move(state), std::move(reply)};
}

UisSnapshot DialogueEngine::estimate_all(const DialogueState& state,
                                         std::string_view user_text) const {
  const auto context = state.transcript.utterances();
  std::optional<S1Pattern> pattern;
  if (state.scenario) pattern = catalog_->scenarios[*state.scenario].s1.pattern;
  const int turn = next_turn_index(state);
  UisSnapshot snap{};
  for (UisKind kind : kAllKinds) {
    auto& e = snap[index_of(kind)];
    try {
      auto request = estimator::make_request(kind, std::string(user_text), context,
                                             config_.estimator.context_window, turn, pattern);
      const UisScore score = estimator_->estimate(request);
      e.score = score.value();
      e.judgment = estimator::judge(score, config_.estimator);
    } catch (const std::exception& ex) {
      spdlog::warn("{} estimate failed at turn {}: {}", to_string(kind), turn, ex.what());
      e = UisEstimate{0.0, Judgment::Neutral, true};
    }
  }
  return snap;
}

EngineReply DialogueEngine::step(DialogueState& state, std::string_view user_text) const {
  if (state.phase == Phase::PostS5Done) throw SessionFinishedError();
  if (state.phase == Phase::AwaitStart) throw ValidationError("session has not been started");
  const std::string text = text::trim(user_text);
  if (text.empty()) throw ValidationError("user utterance must not be empty");

  const UisSnapshot snap = estimate_all(state, text);
  {
    TurnRecord record;
    record.turn = next_turn_index(state);
    record.role = Role::User;
    record.text = text;
    record.scenario_id =
        state.scenario ? catalog_->scenarios[*state.scenario].scenario_id : std::string{};
    record.uis = snap;
    record.rng_draws = state.rng.draws();
    state.transcript.turns.push_back(std::move(record));
  }
  const Judgment knowledge = snap[index_of(UisKind::Knowledge)].judgment;
  const Judgment interest = snap[index_of(UisKind::Interest)].judgment;
  const Judgment engagement = snap[index_of(UisKind::Engagement)].judgment;

  if (state.phase == Phase::InitialQuestionAsked) {
    std::string exclude;
    if (state.topic_change_pending && state.scenario) {
      exclude = catalog_->scenarios[*state.scenario].movie_id;
    }
    const auto pick = catalog::pick_movie_by_preference(*catalog_, *state.pending_question, text,
                                                        state.rng, exclude);
    state.scenario = pick.scenario_index;
    state.knowledge_chain.clear();
    state.phase = Phase::InScenario;
    const auto& sc = catalog_->scenarios[pick.scenario_index];
    if (state.topic_change_pending) {
      // The new movie skips its opening and starts at the recommendation.
      state.topic_change_pending = false;
      state.pending_question.reset();
      state.slot = Slot::S2;
      return emit(state, sc.s2, sc.s2, Slot::S2, {}, snap);
    }
    state.selection_path = pick.path;
    state.selection_question = state.pending_question;
    state.pending_question.reset();
    state.slot = Slot::S1;
    return emit(state, sc.s1.text, sc.s1.text, Slot::S1, {}, snap);
  }

  const auto& sc = catalog_->scenarios[*state.scenario];
  const auto* movie = catalog_->find_movie(sc.movie_id);
  std::optional<std::string> answer;
  if (config_.answer_questions && movie) answer = answer_lookup_question(*movie, text);
  auto with_answer = [&](const std::string& s) {
    return answer ? prepend_sentence(*answer, s) : s;
  };
  const bool rules = state.rules_enabled;

  switch (*state.slot) {
    case Slot::S1: {
      const std::size_t softener = state.rng.uniform_index(kSoftenerPool.size());
      const auto drawn = catalog::draw_initial_question(state.rng);
      const auto pattern = sc.s1.pattern;
      const auto& person = sc.s1.person;
      std::set<RuleId> triggered;
      std::optional<std::string> profile;
      if (rules && pattern == S1Pattern::T3 && knowledge == Judgment::HasNot && person) {
        profile = profile_for(*person);
        if (profile) triggered.insert(RuleId::I);
      }
      if (pattern == S1Pattern::T1 && interest == Judgment::HasNot) triggered.insert(RuleId::V);
      if (state.topic_changes_used == 0 && interest == Judgment::HasNot) {
        if (pattern == S1Pattern::T2) triggered.insert(RuleId::VI);
        if (pattern == S1Pattern::T3 && person) triggered.insert(RuleId::VII);
      }
      std::vector<RuleId> fired = rules ? resolve_rule_conflicts(triggered) : std::vector<RuleId>{};
      const std::string base = with_answer(sc.s2);
      for (RuleId r : fired) {
        if (!is_topic_change(r)) continue;
        const auto question =
            r == RuleId::VII ? catalog::make_initial_question(catalog::PreferenceKind::FavoritePerson,
                                                              person->role)
                             : drawn;
        state.pending_question = question;
        state.topic_change_pending = true;
        state.topic_changes_used += 1;
        state.phase = Phase::InitialQuestionAsked;
        state.slot.reset();
        return emit(state, topic_change_utterance(question.text), base, Slot::InitialQuestion,
                    std::move(fired), snap);
      }
      std::string out = sc.s2;
      for (RuleId r : fired) {
        if (r == RuleId::I) out = prepend_sentence(*profile, out);
        if (r == RuleId::V) out = prepend_sentence(kSoftenerPool[softener], out);
      }
      state.slot = Slot::S2;
      return emit(state, with_answer(out), base, Slot::S2, std::move(fired), snap);
    }
    case Slot::S2: {
      if (knowledge == Judgment::Has) state.knowledge_chain.insert(Slot::S2);
      std::set<RuleId> triggered;
      if (knowledge == Judgment::HasNot && movie && movie->release_year) {
        triggered.insert(RuleId::II);
      }
      if (knowledge == Judgment::Has) triggered.insert(RuleId::III);
      std::vector<RuleId> fired = rules ? resolve_rule_conflicts(triggered) : std::vector<RuleId>{};
      std::string out = sc.s3;
      for (RuleId r : fired) {
        if (r == RuleId::II) out = prepend_sentence(release_year_sentence(*movie->release_year), out);
        if (r == RuleId::III) {
          auto it = sc.consent_variants.find(Slot::S3);
          out = consent_tone(out, it == sc.consent_variants.end()
                                      ? std::nullopt
                                      : std::optional<std::string>(it->second),
                             config_.consent_suffix);
        }
      }
      state.slot = Slot::S3;
      return emit(state, with_answer(out), with_answer(sc.s3), Slot::S3, std::move(fired), snap);
    }
    case Slot::S3: {
      if (knowledge == Judgment::Has) state.knowledge_chain.insert(Slot::S3);
      std::vector<RuleId> fired;
      std::string out = sc.s4;
      if (rules && knowledge == Judgment::Has) {
        fired.push_back(RuleId::III);
        auto it = sc.consent_variants.find(Slot::S4);
        out = consent_tone(out, it == sc.consent_variants.end()
                                    ? std::nullopt
                                    : std::optional<std::string>(it->second),
                           config_.consent_suffix);
      }
      state.slot = Slot::S4;
      return emit(state, with_answer(out), with_answer(sc.s4), Slot::S4, std::move(fired), snap);
    }
    case Slot::S4: {
      const std::size_t pool_index = state.rng.uniform_index(sc.s5_pool.size());
      const std::size_t watch = state.rng.uniform_index(kWatchAgainPool.size());
      const std::size_t modest = state.rng.uniform_index(kModestPool.size());
      if (knowledge == Judgment::Has) state.knowledge_chain.insert(Slot::S4);
      std::set<RuleId> triggered;
      if (state.knowledge_chain.count(Slot::S2) && state.knowledge_chain.count(Slot::S3) &&
          state.knowledge_chain.count(Slot::S4)) {
        triggered.insert(RuleId::IV);
      }
      if (engagement == Judgment::HasNot) triggered.insert(RuleId::VIII);
      std::vector<RuleId> fired = rules ? resolve_rule_conflicts(triggered) : std::vector<RuleId>{};
      std::string out = sc.s5_pool[pool_index];
      for (RuleId r : fired) {
        if (r == RuleId::IV) out = std::string(kWatchAgainPool[watch]);
        if (r == RuleId::VIII) out = std::string(kModestPool[modest]);
      }
      state.slot = Slot::S5;
      state.phase = Phase::PostS5Done;
      return emit(state, with_answer(out), with_answer(sc.s5_pool[pool_index]), Slot::S5,
                  std::move(fired), snap);
    }
    default:
      break;
  }
  throw std::logic_error("engine reached an impossible slot");
}

std::vector<EngineReply> replay(const Transcript& log, const DialogueEngine& engine,
                                bool rules_enabled) {
  std::vector<const TurnRecord*> logged_system;
  for (const auto& t : log.turns) {
    if (t.role == Role::System) logged_system.push_back(&t);
  }
  auto [state, opening] = engine.start_session(log.header.seed, log.header.session_id);
  state.rules_enabled = rules_enabled;
  state.transcript.header.rules_enabled = rules_enabled;

  std::vector<EngineReply> replies;
  replies.push_back(std::move(opening));
  bool may_diverge = false;
  auto check = [&](std::size_t i) {
    if (i >= logged_system.size()) return;
    const TurnRecord& logged = *logged_system[i];
    const EngineReply& got = replies[i];
    if (rules_enabled != log.header.rules_enabled) {
      for (RuleId r : logged.fired_rules) may_diverge = may_diverge || is_topic_change(r);
      for (RuleId r : got.fired_rules) may_diverge = may_diverge || is_topic_change(r);
    }
    if (may_diverge) return;
    if (logged.scenario_id != got.scenario_id || logged.slot != got.slot) {
      throw ReplayMismatchError("system turn " + std::to_string(logged.turn) +
                                ": logged scenario '" + logged.scenario_id + "' but replay chose '" +
                                got.scenario_id + "'");
    }
  };
  check(0);
  for (const auto& user : log.user_texts()) {
    if (state.done()) break;
    replies.push_back(engine.step(state, user));
    check(replies.size() - 1);
  }
  return replies;
}

}  // namespace uisdial::engine
