#include "uisdial/engine/transcript.h"

#include <fstream>
#include <sstream>

#include "uisdial/domain/errors.h"

namespace uisdial::engine {

using nlohmann::json;

std::vector<std::string> Transcript::user_texts() const {
  std::vector<std::string> out;
  for (const auto& t : turns) {
    if (t.role == Role::User) out.push_back(t.text);
  }
  return out;
}

std::vector<Utterance> Transcript::utterances() const {
  std::vector<Utterance> out;
  out.reserve(turns.size());
  for (const auto& t : turns) out.push_back(Utterance{t.role, t.text, t.turn, t.slot});
  return out;
}

bool Transcript::finished() const {
  return !turns.empty() && turns.back().role == Role::System && turns.back().slot == Slot::S5;
}

json to_json(const TranscriptHeader& header) {
  return json{{"type", "header"},
              {"format_version", kTranscriptFormatVersion},
              {"session_id", header.session_id},
              {"seed", header.seed},
              {"rules_enabled", header.rules_enabled},
              {"selection_path", header.selection_path}};
}

json uis_to_json(const UisSnapshot& snapshot) {
  json scores = json::object();
  json judgments = json::object();
  json failed = json::array();
  for (UisKind kind : kAllKinds) {
    const auto& e = snapshot[index_of(kind)];
    scores[std::string(to_string(kind))] = e.score;
    judgments[std::string(to_string(kind))] = std::string(to_string(e.judgment));
    if (e.failed) failed.push_back(std::string(to_string(kind)));
  }
  return json{{"scores", scores}, {"judgments", judgments}, {"estimator_failed", failed}};
}

json to_json(const TurnRecord& r) {
  json j{{"type", "turn"}, {"turn", r.turn}, {"role", std::string(to_string(r.role))},
         {"text", r.text}};
  j["slot"] = r.slot ? json(std::string(to_string(*r.slot))) : json(nullptr);
  j["scenario_id"] = r.scenario_id.empty() ? json(nullptr) : json(r.scenario_id);
  if (r.uis) {
    json u = uis_to_json(*r.uis);
    j["scores"] = u["scores"];
    j["judgments"] = u["judgments"];
    j["estimator_failed"] = u["estimator_failed"];
  } else {
    j["scores"] = nullptr;
    j["judgments"] = nullptr;
  }
  json fired = json::array();
  for (RuleId rule : r.fired_rules) fired.push_back(std::string(to_string(rule)));
  j["fired_rules"] = fired;
  j["counterfactual_text"] =
      r.role == Role::System ? json(r.counterfactual_text) : json(nullptr);
  j["rng_draws"] = r.rng_draws;
  return j;
}

void write_header(std::ostream& out, const TranscriptHeader& header) {
  out << to_json(header).dump() << '\n';
}

void write_turn(std::ostream& out, const TurnRecord& record) {
  out << to_json(record).dump() << '\n';
}

void write_transcript(std::ostream& out, const Transcript& transcript) {
  write_header(out, transcript.header);
  for (const auto& t : transcript.turns) write_turn(out, t);
}

std::string serialize_transcript(const Transcript& transcript) {
  std::ostringstream out;
  write_transcript(out, transcript);
  return out.str();
}

namespace {

TurnRecord parse_turn(const json& j) {
  TurnRecord r;
  r.turn = j.at("turn").get<int>();
  r.role = parse_role(j.at("role").get<std::string>());
  r.text = j.at("text").get<std::string>();
  if (j.contains("slot") && !j["slot"].is_null()) r.slot = parse_slot(j["slot"].get<std::string>());
  if (j.contains("scenario_id") && !j["scenario_id"].is_null()) {
    r.scenario_id = j["scenario_id"].get<std::string>();
  }
  if (j.contains("scores") && !j["scores"].is_null()) {
    UisSnapshot snap{};
    for (UisKind kind : kAllKinds) {
      const std::string key(to_string(kind));
      auto& e = snap[index_of(kind)];
      e.score = j["scores"].at(key).get<double>();
      e.judgment = parse_judgment(j.at("judgments").at(key).get<std::string>());
    }
    if (j.contains("estimator_failed")) {
      for (const auto& k : j["estimator_failed"]) {
        snap[index_of(parse_uis_kind(k.get<std::string>()))].failed = true;
      }
    }
    r.uis = snap;
  }
  if (j.contains("fired_rules")) {
    for (const auto& f : j["fired_rules"]) r.fired_rules.push_back(parse_rule_id(f.get<std::string>()));
  }
  if (j.contains("counterfactual_text") && j["counterfactual_text"].is_string()) {
    r.counterfactual_text = j["counterfactual_text"].get<std::string>();
  }
  r.rng_draws = j.value("rng_draws", std::uint64_t{0});
  return r;
}

}  // namespace

Transcript parse_transcript(std::istream& in) {
  Transcript t;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        const int version = j.at("format_version").get<int>();
        if (version != kTranscriptFormatVersion) {
          throw ValidationError("unsupported transcript format_version " + std::to_string(version));
        }
        t.header.session_id = j.at("session_id").get<std::string>();
        t.header.seed = j.at("seed").get<std::uint64_t>();
        t.header.rules_enabled = j.at("rules_enabled").get<bool>();
        t.header.selection_path = j.value("selection_path", std::string{});
        have_header = true;
      } else if (type == "turn") {
        if (!have_header) throw ValidationError("turn record before header");
        t.turns.push_back(parse_turn(j));
      } else if (type != "end") {
        throw ValidationError("unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError("transcript line " + std::to_string(line_no) + ": " + e.what(), line_no, 1);
    } catch (const ValidationError& e) {
      throw ParseError("transcript line " + std::to_string(line_no) + ": " + e.what(), line_no, 1);
    }
  }
  if (!have_header) throw ParseError("transcript has no header record", line_no, 1);
  return t;
}

Transcript load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transcript " + path.string());
  return parse_transcript(in);
}

void save_transcript(const std::filesystem::path& path, const Transcript& transcript) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write transcript " + path.string());
  write_transcript(out, transcript);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace uisdial::engine
