#include "catch_amalgamated.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "test_support.h"
#include "uisdial/evaluation/metrics.h"
#include "uisdial/evaluation/pairs.h"
#include "uisdial/evaluation/questionnaire.h"
#include "uisdial/evaluation/wilcoxon.h"

using namespace uisdial;
using namespace uisdial::evaluation;
namespace oracle = uisdial::testing::oracle;

TEST_CASE("accuracy gaps are inclusive", "[evaluation][metrics]") {
  const std::vector<Prediction> on_edges = {{1.5, 1}, {-0.5, 1}, {2.5, 3}, {-3.0, -2}};
  const auto r = acc_metrics(on_edges);
  CHECK(r.n == 4);
  // 1.5 vs 1 (0.5), -0.5 vs 1 (1.5), 2.5 vs 3 (0.5), -3 vs -2 (1.0)
  CHECK(r.acc == 0.5);
  CHECK(r.broad_acc == 1.0);

  const std::vector<Prediction> past = {{1.5000001, 1}, {-0.5000001, 1}};
  const auto p = acc_metrics(past);
  CHECK(p.acc == 0.0);
  CHECK(p.broad_acc == 0.5);

  CHECK_THROWS_AS(acc_metrics(std::vector<Prediction>{}), ValidationError);
  CHECK_THROWS_AS(acc_metrics(std::vector<Prediction>{{0.0, 4}}), ValidationError);
}

TEST_CASE("accuracy against a counting oracle", "[evaluation][metrics][property]") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Prediction> preds(1 + rng.uniform_index(30));
    std::size_t close = 0, broad = 0;
    for (auto& p : preds) {
      p.gold = static_cast<int>(rng.uniform_index(7)) - 3;
      // Quarter steps hit the boundaries exactly now and then.
      p.estimate = -3.0 + 0.25 * static_cast<double>(rng.uniform_index(25));
      const double gap = std::abs(p.estimate - p.gold);
      close += gap <= 0.5 ? 1 : 0;
      broad += gap <= 1.5 ? 1 : 0;
    }
    const auto r = acc_metrics(preds);
    REQUIRE(r.acc == static_cast<double>(close) / preds.size());
    REQUIRE(r.broad_acc == static_cast<double>(broad) / preds.size());
    REQUIRE(r.acc <= r.broad_acc);
  }
}

TEST_CASE("majority baseline", "[evaluation][metrics]") {
  const std::vector<int> golds = {1, 1, 2, 2, 3};
  CHECK(majority_class(golds) == 2);
  CHECK(majority_baseline(golds) == Catch::Approx(0.4));
  const std::vector<int> one = {-3};
  CHECK(majority_baseline(one) == 1.0);
}

TEST_CASE("midranks share ties", "[evaluation][wilcoxon]") {
  const std::vector<double> v = {10, 20, 20, 5, 20};
  CHECK(midranks(v) == std::vector<double>{2, 4, 4, 1, 4});
}

TEST_CASE("rank-sum U against pair counting", "[evaluation][wilcoxon][oracle]") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(8), m = 1 + rng.uniform_index(8);
    std::vector<double> x(n), y(m);
    for (auto& v : x) v = static_cast<double>(rng.uniform_index(5));
    for (auto& v : y) v = static_cast<double>(rng.uniform_index(5));
    const auto xy = wilcoxon_rank_sum(x, y);
    const auto yx = wilcoxon_rank_sum(y, x);
    REQUIRE(xy.u_statistic == oracle::pair_count_u(x, y));
    REQUIRE(xy.u_statistic + yx.u_statistic == static_cast<double>(n * m));
    REQUIRE(xy.p_two_sided == Catch::Approx(yx.p_two_sided).margin(1e-12));
    REQUIRE(xy.p_two_sided >= 0.0);
    REQUIRE(xy.p_two_sided <= 1.0);
    if (n + m <= 12) {
      REQUIRE(exact_rank_sum_p(x, y) == Catch::Approx(oracle::enumeration_p(x, y)).margin(1e-12));
    }
  }
}

TEST_CASE("normal approximation matches reference values", "[evaluation][wilcoxon]") {
  // Reference p values from a standard statistics package (asymptotic,
  // continuity corrected, tie-corrected variance).
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {6, 7, 8, 9, 10};
  const auto r = wilcoxon_rank_sum(a, b);
  CHECK(r.u_statistic == 0.0);
  CHECK(r.p_two_sided == Catch::Approx(0.012185780355344813).epsilon(1e-9));
  CHECK(r.z < 0.0);

  const std::vector<double> c = {1, 2, 2, 3, 3}, d = {2, 3, 4, 4, 5, 5};
  const auto t = wilcoxon_rank_sum(c, d);
  CHECK(t.u_statistic == 4.0);
  CHECK(t.p_two_sided == Catch::Approx(0.04974599072150299).epsilon(1e-9));
}

TEST_CASE("degenerate and invalid rank-sum input", "[evaluation][wilcoxon]") {
  const std::vector<double> same = {3, 3, 3}, same2 = {3, 3};
  const auto r = wilcoxon_rank_sum(same, same2);
  CHECK(r.degenerate);
  CHECK(r.p_two_sided == 1.0);
  CHECK(r.u_statistic == 3.0);
  const std::vector<double> empty, nan = {std::nan("")};
  CHECK_THROWS_AS(wilcoxon_rank_sum(empty, same), ValidationError);
  CHECK_THROWS_AS(wilcoxon_rank_sum(nan, same), ValidationError);
  const std::vector<double> big(13, 1.0), big2(12, 2.0);
  CHECK_THROWS_AS(exact_rank_sum_p(big, big2), ValidationError);
}

namespace {

std::vector<QuestionnaireRecord> shifted_fixture(std::size_t per_condition) {
  std::vector<QuestionnaireRecord> out;
  for (std::size_t i = 0; i < per_condition; ++i) {
    const int base = 1 + static_cast<int>(i % 4);
    out.push_back({"wo-" + std::to_string(i), Condition::WithoutRc, base, base, base});
    out.push_back({"w-" + std::to_string(i), Condition::WithRc, base + 1, base + 1, base + 1});
  }
  return out;
}

}  // namespace

TEST_CASE("questionnaire detects a one-point shift", "[evaluation][questionnaire]") {
  const auto records = shifted_fixture(30);
  const auto report = questionnaire_report(records);
  CHECK(report.warnings.empty());
  for (const auto& row : report.rows) {
    REQUIRE(row.test);
    CHECK(row.n_with_rc == 30);
    CHECK(row.n_without_rc == 30);
    CHECK(*row.mean_with_rc - *row.mean_without_rc == Catch::Approx(1.0));
    CHECK(row.test->p_two_sided == Catch::Approx(0.0027920849903746714).epsilon(1e-9));
    CHECK(row.significant);
  }
  const auto text = render_questionnaire(report);
  CHECK(text.find("NATURALNESS") != std::string::npos);
  CHECK(text.find("0.003*") != std::string::npos);
}

TEST_CASE("questionnaire with one condition only", "[evaluation][questionnaire]") {
  std::vector<QuestionnaireRecord> only = {{"a", Condition::WithRc, 4, 4, 4}};
  const auto report = questionnaire_report(only);
  CHECK_FALSE(report.warnings.empty());
  for (const auto& row : report.rows) {
    CHECK_FALSE(row.test);
    CHECK_FALSE(row.significant);
    CHECK(row.mean_with_rc == 4.0);
    CHECK_FALSE(row.mean_without_rc);
  }
}

TEST_CASE("questionnaire records parse and validate", "[evaluation][questionnaire]") {
  std::istringstream in(
      "{\"session_id\":\"a\",\"condition\":\"w-RC\",\"persuasiveness\":5,\"naturalness\":4,"
      "\"satisfaction\":3}\n\n"
      "{\"session_id\":\"b\",\"condition\":\"wo-RC\",\"persuasiveness\":1,\"naturalness\":2,"
      "\"satisfaction\":3}\n");
  const auto records = parse_questionnaires(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0].score(Question::Persuasiveness) == 5);
  CHECK(records[1].condition == Condition::WithoutRc);
  CHECK(questionnaire_from_json(to_json(records[0])) == records[0]);
  QuestionnaireRecord bad{"c", Condition::WithRc, 6, 3, 3};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(parse_condition("both"), ValidationError);
}

TEST_CASE("pairwise tallies conserve votes", "[evaluation][pairs][property]") {
  Rng rng(5);
  std::vector<PairVote> votes;
  std::array<std::size_t, 8> pairs_per_rule{};
  for (int p = 0; p < 120; ++p) {
    const auto rule = engine::kAllRules[rng.uniform_index(8)];
    ++pairs_per_rule[static_cast<std::size_t>(rule) - 1];
    for (int v = 0; v < 10; ++v) {
      votes.push_back({"p" + std::to_string(p), rule, kAllVotes[rng.uniform_index(4)]});
    }
  }
  const auto tally = pairwise_tally(votes);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(tally.rules[i].rule == engine::kAllRules[i]);
    CHECK(tally.rules[i].pairs == pairs_per_rule[i]);
    CHECK(tally.rules[i].total() == 10 * tally.rules[i].pairs);
  }
  CHECK(tally.overall.pairs == 120);
  CHECK(tally.overall.total() == 1200);
  for (std::size_t v = 0; v < 4; ++v) {
    std::size_t sum = 0;
    for (const auto& row : tally.rules) sum += row.counts[v];
    CHECK(sum == tally.overall.counts[v]);
  }
  CHECK(render_tally(tally).find("VIII") != std::string::npos);

  votes.push_back({"p0", engine::RuleId::I, Vote::WithRc});
  votes.push_back({"p0", engine::RuleId::II, Vote::WithRc});
  CHECK_THROWS_AS(pairwise_tally(votes), ValidationError);
}

TEST_CASE("votes parse from JSON lines", "[evaluation][pairs]") {
  std::istringstream in(R"({"pair_id":"s#3#II","rule":"II","vote":"wo-RC"}
{"pair_id":"s#3#II","rule":"II","vote":"unnatural"}
)");
  const auto votes = parse_votes(in);
  REQUIRE(votes.size() == 2);
  CHECK(votes[0].vote == Vote::WithoutRc);
  CHECK(votes[1].vote == Vote::BothUnnatural);
  std::istringstream bad(R"({"pair_id":"x","rule":"II","vote":"maybe"})");
  CHECK_THROWS(parse_votes(bad));
}

namespace {

engine::Transcript log_with_changes(const std::string& id, int changed_turns) {
  engine::Transcript t;
  t.header.session_id = id;
  int turn = 1;
  auto sys = [&](std::string text, std::string cf, std::vector<engine::RuleId> fired) {
    engine::TurnRecord r;
    r.turn = turn++;
    r.role = Role::System;
    r.text = std::move(text);
    r.counterfactual_text = std::move(cf);
    r.fired_rules = std::move(fired);
    r.slot = Slot::S2;
    t.turns.push_back(r);
  };
  auto user = [&] {
    engine::TurnRecord r;
    r.turn = turn++;
    r.role = Role::User;
    r.text = "reply";
    t.turns.push_back(r);
  };
  sys("open", "open", {});
  for (int i = 0; i < changed_turns; ++i) {
    user();
    sys("changed " + std::to_string(i), "plain " + std::to_string(i), {engine::RuleId::II});
  }
  user();
  // Fired but textually identical: not a usable pair.
  sys("same", "same", {engine::RuleId::III});
  return t;
}

}  // namespace

TEST_CASE("evaluation pairs from logs", "[evaluation][pairs]") {
  const std::vector<engine::Transcript> logs = {log_with_changes("a", 3), log_with_changes("b", 4)};
  const auto all = extract_eval_pairs(logs, 100, 1);
  REQUIRE(all.size() == 7);
  CHECK(all[0].pair_id == "a#3#II");
  CHECK(all[0].with_rc == "changed 0");
  CHECK(all[0].without_rc == "plain 0");
  CHECK(all[0].context.size() == 2);
  for (const auto& p : all) CHECK(p.rule == engine::RuleId::II);

  const auto capped = extract_eval_pairs(logs, 3, 9);
  REQUIRE(capped.size() == 3);
  const auto again = extract_eval_pairs(logs, 3, 9);
  for (std::size_t i = 0; i < 3; ++i) CHECK(capped[i].pair_id == again[i].pair_id);
  std::set<std::string> ids;
  for (const auto& p : capped) ids.insert(p.pair_id);
  CHECK(ids.size() == 3);
  CHECK(to_json(capped[0]).at("w_rc") == capped[0].with_rc);
}
