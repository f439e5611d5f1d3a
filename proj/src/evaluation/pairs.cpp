#include "uisdial/evaluation/pairs.h"

#include <algorithm>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "uisdial/domain/errors.h"
#include "uisdial/domain/rng.h"

namespace uisdial::evaluation {

using nlohmann::json;

std::string_view to_string(Vote vote) {
  switch (vote) {
    case Vote::WithRc: return "w-RC";
    case Vote::WithoutRc: return "wo-RC";
    case Vote::BothNatural: return "natural";
    case Vote::BothUnnatural: return "unnatural";
  }
  return "?";
}

Vote parse_vote(std::string_view text) {
  for (Vote v : kAllVotes) {
    if (to_string(v) == text) return v;
  }
  throw ValidationError("unknown vote '" + std::string(text) + "'");
}

std::vector<PairVote> parse_votes(std::istream& in) {
  std::vector<PairVote> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      out.push_back(PairVote{j.at("pair_id").get<std::string>(),
                             engine::parse_rule_id(j.at("rule").get<std::string>()),
                             parse_vote(j.at("vote").get<std::string>())});
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("vote line {}: {}", line_no, e.what()), line_no, 1);
    } catch (const ValidationError& e) {
      throw ParseError(fmt::format("vote line {}: {}", line_no, e.what()), line_no, 1);
    }
  }
  return out;
}

std::vector<PairVote> load_votes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_votes(in);
}

std::size_t TallyRow::total() const {
  std::size_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

PairwiseTally pairwise_tally(std::span<const PairVote> votes) {
  PairwiseTally tally;
  for (std::size_t i = 0; i < engine::kAllRules.size(); ++i) tally.rules[i].rule = engine::kAllRules[i];
  std::map<std::string, engine::RuleId> pair_rule;
  for (const auto& v : votes) {
    auto [it, inserted] = pair_rule.emplace(v.pair_id, v.rule);
    if (!inserted && it->second != v.rule) {
      throw ValidationError("pair '" + v.pair_id + "' is voted under two rules");
    }
    const auto r = static_cast<std::size_t>(v.rule) - 1;
    const auto c = static_cast<std::size_t>(v.vote);
    tally.rules[r].counts[c] += 1;
    tally.overall.counts[c] += 1;
  }
  for (const auto& [id, rule] : pair_rule) {
    tally.rules[static_cast<std::size_t>(rule) - 1].pairs += 1;
    tally.overall.pairs += 1;
  }
  return tally;
}

std::string render_tally(const PairwiseTally& tally) {
  std::string out = fmt::format("{:<8}{:>8}{:>8}{:>10}{:>11}{:>8}\n", "rule", "w-RC", "wo-RC",
                                "natural", "unnatural", "pairs");
  auto line = [](std::string_view name, const TallyRow& row) {
    return fmt::format("{:<8}{:>8}{:>8}{:>10}{:>11}{:>8}\n", name, row.counts[0], row.counts[1],
                       row.counts[2], row.counts[3], row.pairs);
  };
  for (const auto& row : tally.rules) out += line(engine::to_string(*row.rule), row);
  out += line("overall", tally.overall);
  return out;
}

json to_json(const PairwiseTally& tally) {
  auto row_json = [](const TallyRow& row) {
    json counts = json::object();
    for (Vote v : kAllVotes) counts[std::string(to_string(v))] = row.counts[static_cast<std::size_t>(v)];
    return json{{"rule", row.rule ? json(std::string(engine::to_string(*row.rule))) : json("overall")},
                {"counts", counts},
                {"pairs", row.pairs},
                {"total", row.total()}};
  };
  json rows = json::array();
  for (const auto& row : tally.rules) rows.push_back(row_json(row));
  return json{{"rules", rows}, {"overall", row_json(tally.overall)}};
}

std::vector<EvalPair> extract_eval_pairs(const std::vector<engine::Transcript>& logs,
                                         std::size_t per_rule_cap, std::uint64_t seed) {
  std::array<std::vector<EvalPair>, 8> by_rule;
  for (const auto& log : logs) {
    const auto all = log.utterances();
    for (std::size_t i = 0; i < log.turns.size(); ++i) {
      const auto& turn = log.turns[i];
      if (turn.role != Role::System || turn.fired_rules.empty()) continue;
      if (turn.text == turn.counterfactual_text) continue;
      for (engine::RuleId rule : turn.fired_rules) {
        EvalPair p;
        p.session_id = log.header.session_id;
        p.turn = turn.turn;
        p.rule = rule;
        p.pair_id = fmt::format("{}#{}#{}", p.session_id, p.turn, engine::to_string(rule));
        p.context.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(i));
        p.with_rc = turn.text;
        p.without_rc = turn.counterfactual_text;
        by_rule[static_cast<std::size_t>(rule) - 1].push_back(std::move(p));
      }
    }
  }
  Rng rng(seed);
  std::vector<EvalPair> out;
  for (auto& candidates : by_rule) {
    if (candidates.size() > per_rule_cap) {
      std::vector<std::size_t> idx(candidates.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      for (std::size_t i = 0; i < per_rule_cap; ++i) {
        const std::size_t j = i + rng.uniform_index(idx.size() - i);
        std::swap(idx[i], idx[j]);
      }
      idx.resize(per_rule_cap);
      std::sort(idx.begin(), idx.end());
      for (std::size_t i : idx) out.push_back(std::move(candidates[i]));
    } else {
      for (auto& p : candidates) out.push_back(std::move(p));
    }
  }
  return out;
}

json to_json(const EvalPair& p) {
  json context = json::array();
  for (const auto& u : p.context) {
    context.push_back(json{{"role", std::string(to_string(u.role))}, {"text", u.text}});
  }
  return json{{"pair_id", p.pair_id},         {"session_id", p.session_id},
              {"turn", p.turn},               {"rule", std::string(engine::to_string(p.rule))},
              {"context", context},           {"w_rc", p.with_rc},
              {"wo_rc", p.without_rc}};
}

}  // namespace uisdial::evaluation
