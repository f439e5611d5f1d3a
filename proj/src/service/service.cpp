#include "uisdial/service/service.h"

#include <fstream>
#include <random>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "uisdial/evaluation/questionnaire.h"

namespace uisdial::service {

using nlohmann::json;

json error_body(const std::string& category, const std::string& message) {
  return json{{"error", {{"category", category}, {"message", message}}}};
}

bool valid_session_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

namespace {

json uis_json(const engine::UisSnapshot& snap) {
  json out = json::object();
  for (UisKind kind : kAllKinds) {
    const auto& e = snap[index_of(kind)];
    out[std::string(to_string(kind))] = {{"score", e.score},
                                         {"judgment", std::string(to_string(e.judgment))},
                                         {"estimator_failed", e.failed}};
  }
  return out;
}

json rules_json(const std::vector<engine::RuleId>& rules) {
  json out = json::array();
  for (auto r : rules) out.push_back(std::string(engine::to_string(r)));
  return out;
}

std::string condition_of(bool rules_enabled) {
  return std::string(evaluation::to_string(rules_enabled ? evaluation::Condition::WithRc
                                                         : evaluation::Condition::WithoutRc));
}

json transcript_json(const engine::Transcript& t, bool questionnaire_submitted) {
  json turns = json::array();
  for (const auto& r : t.turns) turns.push_back(engine::to_json(r));
  return json{{"session_id", t.header.session_id},
              {"seed", t.header.seed},
              {"rules_enabled", t.header.rules_enabled},
              {"condition", condition_of(t.header.rules_enabled)},
              {"selection_path", t.header.selection_path},
              {"done", t.finished()},
              {"questionnaire_submitted", questionnaire_submitted},
              {"turns", turns}};
}

}  // namespace

SessionService::SessionService(ServiceConfig config,
                               std::shared_ptr<const catalog::CatalogFile> catalog,
                               std::shared_ptr<const estimator::Estimator> estimator,
                               engine::ProfileProvider profiles)
    : config_(std::move(config)), catalog_(std::move(catalog)) {
  config_.validate();
  if (catalog_ && !catalog_->scenarios.empty() && estimator) {
    engine_ = std::make_unique<engine::DialogueEngine>(catalog_, std::move(estimator),
                                                       config_.engine, std::move(profiles));
  }
  std::error_code ec;
  std::filesystem::create_directories(config_.log_dir, ec);
  if (ec) throw IoError("cannot create log directory " + config_.log_dir.string());
  load_questionnaire_index();
}

std::unique_ptr<SessionService> SessionService::from_config(const ServiceConfig& config) {
  std::shared_ptr<const catalog::CatalogFile> catalog;
  try {
    catalog = std::make_shared<const catalog::CatalogFile>(catalog::load_catalog(config.catalog_path));
  } catch (const Error& e) {
    spdlog::error("catalog not loaded ({}): {}", e.category(), e.what());
  }
  auto estimator = estimator::make_estimator(config.estimator_spec);
  auto client = std::make_shared<catalog::ProfileClient>(catalog::ProfileClientConfig{
      .cache_dir = config.profile_cache_dir,
      .fixture_dir = config.profile_fixture_dir,
      .offline = config.offline});
  engine::ProfileProvider profiles = [client](const catalog::PersonRef& person) {
    return client->try_fetch(person.name);
  };
  return std::make_unique<SessionService>(config, std::move(catalog), std::move(estimator),
                                          std::move(profiles));
}

void SessionService::load_questionnaire_index() {
  const auto path = config_.log_dir / "questionnaires.jsonl";
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      questionnaire_done_.insert(json::parse(line).at("session_id").get<std::string>());
    } catch (const json::exception& e) {
      spdlog::warn("skipping malformed questionnaire line: {}", e.what());
    }
  }
}

std::size_t SessionService::live_sessions() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::filesystem::path SessionService::log_path(const std::string& id) const {
  return config_.log_dir / (id + ".jsonl");
}

void SessionService::persist(const std::string& id, Session& session, bool header) {
  std::ofstream out(log_path(id), std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to " + log_path(id).string());
  const auto& t = session.state.transcript;
  if (header) engine::write_header(out, t.header);
  for (std::size_t i = session.persisted; i < t.turns.size(); ++i) engine::write_turn(out, t.turns[i]);
  if (session.state.done()) out << json{{"type", "end"}}.dump() << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + log_path(id).string());
  session.persisted = t.turns.size();
}

std::string SessionService::new_session_id() {
  static thread_local std::random_device device;
  for (;;) {
    const std::uint64_t v = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    std::string id = fmt::format("{:016x}", v);
    std::shared_lock lock(sessions_mutex_);
    if (!sessions_.count(id) && !std::filesystem::exists(log_path(id))) return id;
  }
}

std::uint64_t SessionService::next_seed() {
  if (config_.seed_policy == SeedPolicy::Fixed) return config_.seed;
  static thread_local std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

ServiceResponse SessionService::create_session() {
  if (!engine_) return {503, error_body("unavailable", "catalog not loaded")};
  const std::string id = new_session_id();
  auto session = std::make_shared<Session>();
  auto [state, reply] = engine_->start_session(next_seed(), id);
  session->state = std::move(state);
  try {
    persist(id, *session, true);
  } catch (const Error& e) {
    return {500, error_body(e.category(), e.what())};
  }
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_.emplace(id, session);
  }
  spdlog::info("session {} started (seed {}, {})", id, session->state.rng.seed(),
               condition_of(session->state.rules_enabled));
  return {201, json{{"session_id", id},
                    {"first_system_utterance", reply.text},
                    {"slot", std::string(to_string(reply.slot))},
                    {"turn", reply.turn_index},
                    {"scenario_id", reply.scenario_id.empty() ? json(nullptr) : json(reply.scenario_id)},
                    {"condition", condition_of(session->state.rules_enabled)},
                    {"seed", session->state.rng.seed()}}};
}

ServiceResponse SessionService::post_utterance(const std::string& id, const json& body) {
  auto session = valid_session_id(id) ? find(id) : nullptr;
  if (!session) return {404, error_body("not_found", "unknown session '" + id + "'")};
  if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
    return {422, error_body("validation", "body must be {\"text\": <string>}")};
  }
  std::unique_lock lock(session->mutex, std::try_to_lock);
  if (!lock.owns_lock()) return {409, error_body("busy", "session is processing another utterance")};
  if (session->state.done()) {
    return {409, error_body("session_finished", "the dialogue has already finished")};
  }
  engine::EngineReply reply;
  try {
    reply = engine_->step(session->state, body["text"].get<std::string>());
  } catch (const ValidationError& e) {
    return {422, error_body(e.category(), e.what())};
  }
  try {
    persist(id, *session, false);
  } catch (const Error& e) {
    return {500, error_body(e.category(), e.what())};
  }
  json out{{"session_id", id},
           {"turn", reply.turn_index},
           {"reply", reply.text},
           {"slot", std::string(to_string(reply.slot))},
           {"scenario_id", reply.scenario_id.empty() ? json(nullptr) : json(reply.scenario_id)},
           {"fired_rules", rules_json(reply.fired_rules)},
           {"counterfactual_text", reply.counterfactual_text},
           {"done", reply.done}};
  out["uis"] = reply.uis_snapshot ? uis_json(*reply.uis_snapshot) : json(nullptr);
  return {200, out};
}

ServiceResponse SessionService::post_questionnaire(const std::string& id, const json& body) {
  if (!valid_session_id(id)) return {404, error_body("not_found", "unknown session '" + id + "'")};
  bool finished = false;
  bool rules_enabled = config_.engine.rules_enabled;
  if (auto session = find(id)) {
    std::lock_guard lock(session->mutex);
    finished = session->state.done();
    rules_enabled = session->state.rules_enabled;
  } else if (std::filesystem::exists(log_path(id))) {
    try {
      const auto t = engine::load_transcript(log_path(id));
      finished = t.finished();
      rules_enabled = t.header.rules_enabled;
    } catch (const Error& e) {
      return {500, error_body(e.category(), e.what())};
    }
  } else {
    return {404, error_body("not_found", "unknown session '" + id + "'")};
  }
  if (!finished) return {409, error_body("not_finished", "the dialogue has not finished yet")};

  evaluation::QuestionnaireRecord record;
  record.session_id = id;
  record.condition = rules_enabled ? evaluation::Condition::WithRc : evaluation::Condition::WithoutRc;
  try {
    if (!body.is_object()) throw ValidationError("body must be a JSON object");
    for (const char* key : {"persuasiveness", "naturalness", "satisfaction"}) {
      if (!body.contains(key) || !body[key].is_number_integer()) {
        throw ValidationError(std::string(key) + " must be an integer in [1, 5]");
      }
    }
    record.persuasiveness = body["persuasiveness"].get<int>();
    record.naturalness = body["naturalness"].get<int>();
    record.satisfaction = body["satisfaction"].get<int>();
    record.validate();
  } catch (const ValidationError& e) {
    return {422, error_body(e.category(), e.what())};
  }

  std::lock_guard lock(questionnaire_mutex_);
  if (questionnaire_done_.count(id)) {
    return {409, error_body("duplicate", "a questionnaire was already submitted for this session")};
  }
  const auto path = config_.log_dir / "questionnaires.jsonl";
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << evaluation::to_json(record).dump() << '\n';
  out.flush();
  if (!out) return {500, error_body("io", "cannot append to " + path.string())};
  questionnaire_done_.insert(id);
  return {200, json{{"status", "recorded"},
                    {"session_id", id},
                    {"condition", std::string(evaluation::to_string(record.condition))}}};
}

ServiceResponse SessionService::get_session(const std::string& id) const {
  if (!valid_session_id(id)) return {404, error_body("not_found", "unknown session '" + id + "'")};
  bool submitted = false;
  {
    std::lock_guard lock(questionnaire_mutex_);
    submitted = questionnaire_done_.count(id) > 0;
  }
  if (auto session = find(id)) {
    std::unique_lock lock(session->mutex, std::try_to_lock);
    if (!lock.owns_lock()) return {409, error_body("busy", "session is processing an utterance")};
    return {200, transcript_json(session->state.transcript, submitted)};
  }
  if (std::filesystem::exists(log_path(id))) {
    try {
      return {200, transcript_json(engine::load_transcript(log_path(id)), submitted)};
    } catch (const Error& e) {
      return {500, error_body(e.category(), e.what())};
    }
  }
  return {404, error_body("not_found", "unknown session '" + id + "'")};
}

ServiceResponse SessionService::health() const {
  return {ready() ? 200 : 503,
          json{{"status", ready() ? "ok" : "unavailable"},
               {"catalog_loaded", ready()},
               {"live_sessions", live_sessions()},
               {"condition", condition_of(config_.engine.rules_enabled)},
               {"estimator", std::string(estimator::to_string(config_.estimator_spec.backend))}}};
}

}  // namespace uisdial::service
