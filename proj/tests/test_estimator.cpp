#include "catch_amalgamated.hpp"

#include <chrono>
#include <sstream>

#include "test_support.h"
#include "uisdial/estimator/external.h"
#include "uisdial/estimator/factory.h"
#include "uisdial/estimator/lexicon.h"
#include "uisdial/estimator/linear.h"
#include "uisdial/estimator/wire.h"
#include "uisdial/evaluation/metrics.h"
#include "uisdial/synth/synth.h"

using namespace uisdial;
using namespace uisdial::estimator;

namespace {

EstimationRequest req(UisKind kind, std::string target, std::string last_system = "",
                      std::vector<ContextTurn> more = {}) {
  EstimationRequest r;
  r.kind = kind;
  r.target = std::move(target);
  if (!last_system.empty()) r.context.push_back({Role::System, std::move(last_system)});
  for (auto& t : more) r.context.push_back(std::move(t));
  return r;
}

double lex(UisKind kind, const std::string& target, const std::string& sys = "") {
  return LexiconEstimator().estimate(req(kind, target, sys)).value();
}

}  // namespace

TEST_CASE("judgment thresholds are strict", "[estimator]") {
  const Thresholds ki{1.5, -1.5};
  CHECK(judge(1.5, ki) == Judgment::Neutral);
  CHECK(judge(1.5000001, ki) == Judgment::Has);
  CHECK(judge(-1.5, ki) == Judgment::Neutral);
  CHECK(judge(-1.5000001, ki) == Judgment::HasNot);
  EstimatorConfig config;
  CHECK(judge(UisScore(UisKind::Engagement, 1.0), config) == Judgment::Neutral);
  CHECK(judge(UisScore(UisKind::Engagement, 1.01), config) == Judgment::Has);
  CHECK(judge(UisScore(UisKind::Interest, 1.2), config) == Judgment::Neutral);
  CHECK(judge(UisScore(UisKind::Engagement, -1.2), config) == Judgment::HasNot);
}

TEST_CASE("estimator config validation", "[estimator]") {
  EstimatorConfig config;
  CHECK_NOTHROW(config.validate());
  config.thresholds[0] = {0.0, -1.0};
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config = {};
  config.context_window = -1;
  CHECK_THROWS_AS(config.validate(), ValidationError);
  CHECK(parse_backend("linear") == Backend::Linear);
  CHECK_THROWS_AS(parse_backend("bert"), ValidationError);
}

TEST_CASE("built-in lexicon on typical replies", "[estimator][lexicon]") {
  CHECK(lex(UisKind::Knowledge, "I don't know that movie.") == -3.0);
  CHECK(lex(UisKind::Knowledge, "I don’t know that movie.") == -3.0);
  CHECK(lex(UisKind::Knowledge, "I watched it on DVD.") == 3.0);
  CHECK(lex(UisKind::Interest, "I like Robert De Niro") > 1.5);
  CHECK(lex(UisKind::Engagement, "Okay.") < -1.0);
  CHECK(lex(UisKind::Interest, "Hmm, the weather is strange.") == 0.0);
  // Context-gated entries only apply after a knowledge question.
  CHECK(lex(UisKind::Knowledge, "Yes.", "Do you know Star Wars?") == 2.0);
  CHECK(lex(UisKind::Knowledge, "Yes.", "It was a big hit.") == 0.0);
  // Word boundaries: "no" inside "know" must not fire.
  CHECK(lex(UisKind::Knowledge, "I know", "Do you know it?") == 2.0);
}

TEST_CASE("lexicon json round trip and longest match", "[estimator][lexicon]") {
  const auto j = Lexicon::builtin().to_json();
  const auto back = Lexicon::from_json(j);
  for (UisKind k : kAllKinds) CHECK(back.entries(k).size() == Lexicon::builtin().entries(k).size());

  std::array<std::vector<LexiconEntry>, 3> e;
  e[0] = {{"know", 1.0, std::nullopt}, {"don't know", -2.0, std::nullopt}};
  const Lexicon custom(e);
  CHECK(custom.lookup(UisKind::Knowledge, "I don't know", "") == -2.0);
  CHECK(custom.lookup(UisKind::Knowledge, "I know", "") == 1.0);
  CHECK(custom.lookup(UisKind::Interest, "I know", "") == 0.0);
}

TEST_CASE("requests keep the most recent turns first", "[estimator]") {
  std::vector<Utterance> chrono = {{Role::System, "s1"}, {Role::User, "u1"}, {Role::System, "s2"}};
  const auto r = make_request(UisKind::Interest, "u2", chrono, 2, 4);
  REQUIRE(r.context.size() == 2);
  CHECK(r.context[0].text == "s2");
  CHECK(r.context[1].text == "u1");
  CHECK(r.turn_index == 4);
  REQUIRE(last_system_turn(r, 2));
  CHECK(last_system_turn(r, 2)->text == "s2");
  const auto none = make_request(UisKind::Interest, "u2", chrono, 0);
  CHECK(none.context.empty());
  CHECK(last_system_turn(none, 10) == nullptr);
}

TEST_CASE("wire encoding escapes and round-trips", "[estimator][wire]") {
  auto r = req(UisKind::Engagement, "tab\there\\ and\nnewline", "sys\r\nline",
               {{Role::User, "older"}, {Role::System, "oldest"}});
  const auto line = serialize_context(r, 10);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(line.rfind("engagement\tTARGET\t", 0) == 0);
  const auto back = parse_serialized_context(line);
  CHECK(back.kind == r.kind);
  CHECK(back.target == r.target);
  CHECK(back.context == r.context);

  const auto cut = parse_serialized_context(serialize_context(r, 1));
  CHECK(cut.context.size() == 1);

  r.turn_index = 6;
  r.s1_pattern = S1Pattern::T2;
  const auto j = to_wire_json(r, 10);
  CHECK(j.at("line") == line);
  CHECK(from_wire_json(j) == r);

  CHECK(unescape_field(escape_field("a\\tb\t")) == "a\\tb\t");
  CHECK_THROWS(parse_serialized_context("nonsense"));
}

TEST_CASE("feature hashing", "[estimator][linear]") {
  // Published FNV-1a 64 test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);

  auto r = req(UisKind::Knowledge, "I know it", "Do you know Star Wars?");
  r.turn_index = 14;
  r.s1_pattern = S1Pattern::T3;
  const auto names = feature_names(r, 10);
  auto has = [&](const std::string& n) {
    return std::find(names.begin(), names.end(), n) != names.end();
  };
  CHECK(has("u:know"));
  CHECK(has("b:i know"));
  CHECK(has("s:star"));
  CHECK(has("t:11"));
  CHECK(has("p:T3"));
  const auto idx = extract_features(r, 10);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
  for (auto i : idx) CHECK(i < kFeatureDim);
  CHECK_FALSE(has("t:0"));
  CHECK(feature_names(req(UisKind::Knowledge, "x", "sys"), 0) ==
        std::vector<std::string>{"u:x"});
}

TEST_CASE("linear model learns a noise-free synthetic corpus", "[estimator][linear]") {
  synth::SynthConfig sc;
  sc.dialogues = 60;
  sc.seed = 11;
  const auto corpus = synth::generate_corpus(sc);
  const auto split = corpus::split_corpus(corpus.records, {0.8, 0.1, 0.1, 11});

  LinearBundle bundle;
  for (UisKind k : kAllKinds) {
    const auto result = train_linear(split.train, split.dev, k, {});
    CHECK(result.grid.size() == 4);
    CHECK_FALSE(result.constant_labels);
    bundle.models[index_of(k)] = result.model;
  }
  const LinearEstimator est(bundle);
  for (UisKind k : kAllKinds) {
    const auto row = evaluation::evaluate_estimator(est, split.test, k, 10);
    CHECK(row.acc >= 0.7);
    CHECK(row.broad_acc >= 0.95);
  }

  testing::TempDir dir;
  const auto path = (dir.path() / "model.json").string();
  bundle.save(path);
  const auto loaded = LinearBundle::load(path);
  for (UisKind k : kAllKinds) CHECK(*loaded.models[index_of(k)] == *bundle.models[index_of(k)]);
  const LinearEstimator again(loaded);
  for (const auto& rec : split.test) {
    for (UisKind k : kAllKinds) {
      const auto r = request_from_record(rec, k, 10);
      CHECK(again.estimate(r).value() == est.estimate(r).value());
    }
  }

  LinearBundle partial;
  partial.models[0] = bundle.models[0];
  CHECK_THROWS_AS(LinearEstimator(partial), ValidationError);
}

TEST_CASE("linear training edge cases", "[estimator][linear]") {
  auto records = synth::generate_corpus({.dialogues = 4, .seed = 3}).records;
  CHECK_THROWS_AS(train_linear({}, records, UisKind::Knowledge, {}), ValidationError);
  for (auto& r : records) r.labels[0] = LabelTriplet{1, 1, 0};
  const auto constant = train_linear(records, {}, UisKind::Knowledge, {});
  CHECK(constant.constant_labels);
  for (const auto& r : records) {
    CHECK(constant.model.predict(request_from_record(r, UisKind::Knowledge, 10)) ==
          Catch::Approx(2.0));
  }
}

TEST_CASE("external estimator over HTTP", "[estimator][external]") {
  nlohmann::json last_body;
  std::mutex mu;
  testing::LocalServer server([&](httplib::Server& s) {
    s.Post("/estimate", [&](const httplib::Request& rq, httplib::Response& rs) {
      const auto body = nlohmann::json::parse(rq.body);
      {
        std::lock_guard lock(mu);
        last_body = body;
      }
      const std::string target = body.at("target");
      if (target == "boom") {
        rs.status = 500;
      } else if (target == "garbage") {
        rs.set_content("not json", "application/json");
      } else if (target == "slow") {
        std::this_thread::sleep_for(std::chrono::milliseconds(600));
        rs.set_content(R"({"score": 1})", "application/json");
      } else if (target == "huge") {
        rs.set_content(R"({"score": 9.5})", "application/json");
      } else {
        rs.set_content(R"({"score": -1.25})", "application/json");
      }
    });
  });
  ExternalConfig config;
  config.url = server.origin() + "/estimate";
  config.timeout_ms = 200;
  const ExternalEstimator est(config);

  auto r = req(UisKind::Interest, "hello", "Do you like comedies?");
  r.turn_index = 3;
  const auto score = est.estimate(r);
  CHECK(score.kind() == UisKind::Interest);
  CHECK(score.value() == -1.25);
  {
    std::lock_guard lock(mu);
    CHECK(from_wire_json(last_body) == r);
  }
  CHECK(est.estimate(req(UisKind::Interest, "huge")).value() == 3.0);
  CHECK_THROWS_AS(est.estimate(req(UisKind::Interest, "boom")), EstimatorError);
  CHECK_THROWS_AS(est.estimate(req(UisKind::Interest, "garbage")), EstimatorError);
  CHECK_THROWS_AS(est.estimate(req(UisKind::Interest, "slow")), EstimatorError);

  ExternalConfig dead;
  dead.url = "http://127.0.0.1:1/estimate";
  dead.timeout_ms = 200;
  CHECK_THROWS_AS(ExternalEstimator(dead).estimate(r), EstimatorError);
}

TEST_CASE("estimator factory", "[estimator]") {
  CHECK(make_estimator({})->name() == "lexicon");
  EstimatorSpec linear;
  linear.backend = Backend::Linear;
  CHECK_THROWS_AS(make_estimator(linear), ValidationError);
  EstimatorSpec external;
  external.backend = Backend::External;
  CHECK(make_estimator(external)->name() == "external");
}
