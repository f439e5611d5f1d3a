#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "uisdial/catalog/profile_client.h"
#include "uisdial/engine/engine.h"
#include "uisdial/service/config.h"

namespace uisdial::service {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

// Session store and request handlers, independent of the HTTP binding.
//
// Every turn is appended to <log_dir>/<session_id>.jsonl before the reply is
// returned, so a restart loses nothing that was acknowledged. Questionnaires
// go to <log_dir>/questionnaires.jsonl, which is scanned at startup to keep
// the one-per-session rule across restarts.
//
// Requests for different sessions run concurrently. A second request for a
// session that is still busy gets 409 with error category "busy".
class SessionService {
 public:
  // catalog may be null (failed to load); session creation then returns 503.
  SessionService(ServiceConfig config, std::shared_ptr<const catalog::CatalogFile> catalog,
                 std::shared_ptr<const estimator::Estimator> estimator,
                 engine::ProfileProvider profiles = {});

  // Loads catalog, estimator and profile client from the config. A catalog
  // that fails to load is logged and leaves the service in the 503 state.
  static std::unique_ptr<SessionService> from_config(const ServiceConfig& config);

  ServiceResponse create_session();
  ServiceResponse post_utterance(const std::string& session_id, const nlohmann::json& body);
  ServiceResponse post_questionnaire(const std::string& session_id, const nlohmann::json& body);
  ServiceResponse get_session(const std::string& session_id) const;
  ServiceResponse health() const;

  const ServiceConfig& config() const { return config_; }
  bool ready() const { return engine_ != nullptr; }
  std::size_t live_sessions() const;

 private:
  struct Session {
    std::mutex mutex;
    engine::DialogueState state;
    std::size_t persisted = 0;  // turn records already on disk
  };

  std::shared_ptr<Session> find(const std::string& session_id) const;
  std::filesystem::path log_path(const std::string& session_id) const;
  void persist(const std::string& session_id, Session& session, bool header);
  std::string new_session_id();
  std::uint64_t next_seed();
  void load_questionnaire_index();

  ServiceConfig config_;
  std::shared_ptr<const catalog::CatalogFile> catalog_;
  std::unique_ptr<engine::DialogueEngine> engine_;

  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;

  mutable std::mutex questionnaire_mutex_;
  std::set<std::string> questionnaire_done_;
};

nlohmann::json error_body(const std::string& category, const std::string& message);

// Session ids are [A-Za-z0-9_-]{1,64}; anything else is never a file name.
bool valid_session_id(const std::string& session_id);

}  // namespace uisdial::service
