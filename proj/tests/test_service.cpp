#include "catch_amalgamated.hpp"

#include <atomic>
#include <fstream>
#include <future>

#include "test_support.h"
#include "uisdial/service/config.h"
#include "uisdial/service/http.h"
#include "uisdial/service/service.h"

using namespace uisdial;
using namespace uisdial::service;
using nlohmann::json;
using uisdial::testing::ScriptedEstimator;
using uisdial::testing::TempDir;

namespace {

ServiceConfig test_config(const TempDir& dir, bool rules = true) {
  ServiceConfig c;
  c.log_dir = dir.path();
  c.seed_policy = SeedPolicy::Fixed;
  c.seed = 42;
  c.engine.rules_enabled = rules;
  return c;
}

std::shared_ptr<const estimator::Estimator> scripted() {
  return std::make_shared<ScriptedEstimator>(std::map<std::string, ScriptedEstimator::Scores>{
      {"bored", {0, -3, 0}}, {"know it", {3, 0, 0}}, {"whatever", {0, 0, -3}}});
}

SessionService make_service(const ServiceConfig& c) {
  return SessionService(c, uisdial::testing::bundled_catalog(), scripted());
}

// Talks until the session finishes; returns the last reply body.
json finish(SessionService& svc, const std::string& id) {
  json last;
  for (int i = 0; i < 10; ++i) {
    const auto r = svc.post_utterance(id, {{"text", "know it"}});
    REQUIRE(r.status == 200);
    last = r.body;
    if (last["done"].get<bool>()) return last;
  }
  FAIL("session did not finish");
  return last;
}

// Blocks inside estimate() until released, to hold a session busy.
class GateEstimator final : public estimator::Estimator {
 public:
  UisScore estimate(const estimator::EstimationRequest& r) const override {
    entered = true;
    while (!released) std::this_thread::yield();
    return UisScore(r.kind, 0.0);
  }
  std::string name() const override { return "gate"; }
  mutable std::atomic<bool> entered{false};
  mutable std::atomic<bool> released{false};
};

}  // namespace

TEST_CASE("session lifecycle", "[service]") {
  TempDir dir;
  auto svc = make_service(test_config(dir));
  CHECK(svc.health().status == 200);

  const auto created = svc.create_session();
  REQUIRE(created.status == 201);
  const std::string id = created.body["session_id"];
  CHECK(valid_session_id(id));
  CHECK(created.body["turn"] == 1);
  CHECK(created.body["condition"] == "w-RC");
  CHECK(created.body["seed"] == 42);
  CHECK_FALSE(created.body["first_system_utterance"].get<std::string>().empty());
  CHECK(std::filesystem::exists(dir.path() / (id + ".jsonl")));

  const auto early = svc.post_questionnaire(id, {{"persuasiveness", 4}, {"naturalness", 4}, {"satisfaction", 4}});
  CHECK(early.status == 409);
  CHECK(early.body["error"]["category"] == "not_finished");

  const auto r = svc.post_utterance(id, {{"text", "hello"}});
  REQUIRE(r.status == 200);
  CHECK(r.body["turn"] == 3);
  for (const char* kind : {"knowledge", "interest", "engagement"}) {
    CHECK(r.body["uis"][kind].contains("score"));
    CHECK(r.body["uis"][kind].contains("judgment"));
  }
  CHECK(r.body["fired_rules"].is_array());

  finish(svc, id);
  const auto after = svc.post_utterance(id, {{"text", "more"}});
  CHECK(after.status == 409);
  CHECK(after.body["error"]["category"] == "session_finished");

  const json answers = {{"persuasiveness", 5}, {"naturalness", 4}, {"satisfaction", 3}};
  const auto q = svc.post_questionnaire(id, answers);
  CHECK(q.status == 200);
  CHECK(q.body["condition"] == "w-RC");
  CHECK(svc.post_questionnaire(id, answers).status == 409);

  const auto got = svc.get_session(id);
  REQUIRE(got.status == 200);
  CHECK(got.body["done"] == true);
  CHECK(got.body["questionnaire_submitted"] == true);
}

TEST_CASE("request validation", "[service]") {
  TempDir dir;
  auto svc = make_service(test_config(dir));
  const std::string id = svc.create_session().body["session_id"];
  CHECK(svc.post_utterance("nope", {{"text", "hi"}}).status == 404);
  CHECK(svc.post_utterance("../etc/passwd", {{"text", "hi"}}).status == 404);
  CHECK(svc.post_utterance(id, json::object()).status == 422);
  CHECK(svc.post_utterance(id, {{"text", 5}}).status == 422);
  const auto empty = svc.post_utterance(id, {{"text", "  "}});
  CHECK(empty.status == 422);
  CHECK(empty.body["error"].contains("message"));
  CHECK(svc.get_session("missing").status == 404);
  CHECK(svc.post_questionnaire("missing", json::object()).status == 404);

  finish(svc, id);
  CHECK(svc.post_questionnaire(id, {{"persuasiveness", 6}, {"naturalness", 4}, {"satisfaction", 3}}).status == 422);
  CHECK(svc.post_questionnaire(id, {{"persuasiveness", "5"}, {"naturalness", 4}, {"satisfaction", 3}}).status == 422);
  CHECK(svc.post_questionnaire(id, {{"naturalness", 4}}).status == 422);
}

TEST_CASE("fixed seeds replay byte-identically", "[service]") {
  TempDir dir;
  auto svc = make_service(test_config(dir));
  std::vector<json> tracks;
  for (int k = 0; k < 2; ++k) {
    const std::string id = svc.create_session().body["session_id"];
    for (const char* t : {"comedy", "bored", "Japanese", "know it", "whatever", "ok", "ok"}) {
      if (svc.post_utterance(id, {{"text", t}}).status != 200) break;
    }
    tracks.push_back(svc.get_session(id).body["turns"]);
  }
  CHECK(tracks[0].dump() == tracks[1].dump());
}

TEST_CASE("sessions survive a restart", "[service]") {
  TempDir dir;
  std::string id;
  json before;
  {
    auto svc = make_service(test_config(dir));
    id = svc.create_session().body["session_id"];
    finish(svc, id);
    before = svc.get_session(id).body;
  }
  auto svc = make_service(test_config(dir));
  CHECK(svc.live_sessions() == 0);
  const auto after = svc.get_session(id);
  REQUIRE(after.status == 200);
  CHECK(after.body["turns"] == before["turns"]);
  CHECK(after.body["done"] == true);

  const json answers = {{"persuasiveness", 2}, {"naturalness", 2}, {"satisfaction", 2}};
  CHECK(svc.post_questionnaire(id, answers).status == 200);
  auto third = make_service(test_config(dir));
  CHECK(third.post_questionnaire(id, answers).status == 409);
  std::ifstream in(dir.path() / "questionnaires.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1);
}

TEST_CASE("condition follows the rules switch", "[service]") {
  TempDir dir;
  auto svc = make_service(test_config(dir, false));
  const auto created = svc.create_session();
  CHECK(created.body["condition"] == "wo-RC");
  const std::string id = created.body["session_id"];
  finish(svc, id);
  const auto q = svc.post_questionnaire(id, {{"persuasiveness", 3}, {"naturalness", 3}, {"satisfaction", 3}});
  CHECK(q.body["condition"] == "wo-RC");
}

TEST_CASE("missing catalog gives 503", "[service]") {
  TempDir dir;
  SessionService svc(test_config(dir), nullptr, scripted());
  CHECK(svc.health().status == 503);
  CHECK(svc.create_session().status == 503);

  auto config = test_config(dir);
  config.catalog_path = dir.path() / "absent.json";
  const auto loaded = SessionService::from_config(config);
  CHECK_FALSE(loaded->ready());
}

TEST_CASE("a busy session rejects a second utterance", "[service]") {
  TempDir dir;
  auto gate = std::make_shared<GateEstimator>();
  SessionService svc(test_config(dir), uisdial::testing::bundled_catalog(), gate);
  const std::string id = svc.create_session().body["session_id"];
  auto pending = std::async(std::launch::async, [&] { return svc.post_utterance(id, {{"text", "a"}}); });
  while (!gate->entered) std::this_thread::yield();
  const auto second = svc.post_utterance(id, {{"text", "b"}});
  CHECK(second.status == 409);
  CHECK(second.body["error"]["category"] == "busy");
  gate->released = true;
  CHECK(pending.get().status == 200);
}

TEST_CASE("config parsing and environment overrides", "[service][config]") {
  const auto c = config_from_json(json::parse(R"({
    "port": 9000, "seed_policy": "fixed", "seed": 7,
    "estimator": {"backend": "lexicon", "context_window": 4,
                  "thresholds": {"engagement": [0.5, -0.5]}},
    "rules_enabled": false
  })"));
  CHECK(c.port == 9000);
  CHECK(c.seed_policy == SeedPolicy::Fixed);
  CHECK(c.engine.estimator.context_window == 4);
  CHECK(c.engine.estimator.thresholds_for(UisKind::Engagement).positive == 0.5);
  CHECK_FALSE(c.engine.rules_enabled);
  CHECK_THROWS_AS(config_from_json(json{{"prot", 1}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(json{{"port", 70000}}), ValidationError);

  ServiceConfig e;
  apply_env_overrides(e, [](const std::string& k) -> std::optional<std::string> {
    if (k == "UIS_PORT") return "9100";
    if (k == "UIS_RULES_ENABLED") return "false";
    if (k == "UIS_SEED") return "11";
    return std::nullopt;
  });
  CHECK(e.port == 9100);
  CHECK_FALSE(e.engine.rules_enabled);
  CHECK(e.seed == 11);
  ServiceConfig bad;
  CHECK_THROWS_AS(apply_env_overrides(bad, [](const std::string& k) -> std::optional<std::string> {
                    if (k == "UIS_PORT") return "eighty";
                    return std::nullopt;
                  }),
                  ValidationError);
  CHECK(config_from_json(to_json(c)).port == 9000);
}

TEST_CASE("HTTP binding", "[service][http]") {
  TempDir dir;
  auto svc = make_service(test_config(dir));
  uisdial::testing::LocalServer server([&](httplib::Server& s) { register_routes(s, svc); });
  httplib::Client client("127.0.0.1", server.port());

  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

  auto preflight = client.Options("/sessions");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  CHECK(preflight->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

  auto created = client.Post("/sessions", "", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = json::parse(created->body)["session_id"];

  auto reply = client.Post("/sessions/" + id + "/utterance", R"({"text":"hello"})", "application/json");
  REQUIRE(reply);
  CHECK(reply->status == 200);
  CHECK(json::parse(reply->body)["session_id"] == id);

  auto broken = client.Post("/sessions/" + id + "/utterance", "{oops", "application/json");
  REQUIRE(broken);
  CHECK(broken->status == 400);
  CHECK(json::parse(broken->body)["error"]["category"] == "parse");

  auto missing = client.Post("/sessions/zzz/utterance", R"({"text":"x"})", "application/json");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto got = client.Get("/sessions/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(json::parse(got->body)["turns"].size() == 3);

  auto q = client.Post("/sessions/" + id + "/questionnaire",
                       R"({"persuasiveness":3,"naturalness":3,"satisfaction":3})", "application/json");
  REQUIRE(q);
  CHECK(q->status == 409);
}
