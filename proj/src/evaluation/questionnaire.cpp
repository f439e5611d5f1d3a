#include "uisdial/evaluation/questionnaire.h"

#include <cctype>
#include <fstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "uisdial/domain/errors.h"

namespace uisdial::evaluation {

using nlohmann::json;

std::string_view to_string(Condition condition) {
  return condition == Condition::WithRc ? "w-RC" : "wo-RC";
}

Condition parse_condition(std::string_view text) {
  if (text == "w-RC") return Condition::WithRc;
  if (text == "wo-RC") return Condition::WithoutRc;
  throw ValidationError("unknown condition '" + std::string(text) + "'");
}

std::string_view to_string(Question question) {
  switch (question) {
    case Question::Persuasiveness: return "persuasiveness";
    case Question::Naturalness: return "naturalness";
    case Question::Satisfaction: return "satisfaction";
  }
  return "?";
}

int QuestionnaireRecord::score(Question question) const {
  switch (question) {
    case Question::Persuasiveness: return persuasiveness;
    case Question::Naturalness: return naturalness;
    case Question::Satisfaction: return satisfaction;
  }
  return 0;
}

void QuestionnaireRecord::validate() const {
  for (Question q : kAllQuestions) {
    const int v = score(q);
    if (v < kLikertMin || v > kLikertMax) {
      throw ValidationError(fmt::format("{} must be an integer in [{}, {}], got {}", to_string(q),
                                        kLikertMin, kLikertMax, v));
    }
  }
}

json to_json(const QuestionnaireRecord& r) {
  return json{{"session_id", r.session_id},
              {"condition", std::string(to_string(r.condition))},
              {"persuasiveness", r.persuasiveness},
              {"naturalness", r.naturalness},
              {"satisfaction", r.satisfaction}};
}

QuestionnaireRecord questionnaire_from_json(const json& j) {
  QuestionnaireRecord r;
  try {
    r.session_id = j.at("session_id").get<std::string>();
    r.condition = parse_condition(j.at("condition").get<std::string>());
    r.persuasiveness = j.at("persuasiveness").get<int>();
    r.naturalness = j.at("naturalness").get<int>();
    r.satisfaction = j.at("satisfaction").get<int>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("questionnaire record: ") + e.what());
  }
  r.validate();
  return r;
}

std::vector<QuestionnaireRecord> parse_questionnaires(std::istream& in) {
  std::vector<QuestionnaireRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(questionnaire_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("questionnaire line {}: {}", line_no, e.what()), line_no, 1);
    } catch (const ValidationError& e) {
      throw ParseError(fmt::format("questionnaire line {}: {}", line_no, e.what()), line_no, 1);
    }
  }
  return out;
}

std::vector<QuestionnaireRecord> load_questionnaires(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_questionnaires(in);
}

QuestionnaireReport questionnaire_report(std::span<const QuestionnaireRecord> records) {
  QuestionnaireReport report;
  std::array<std::vector<double>, 3> with{}, without{};
  for (const auto& r : records) {
    r.validate();
    for (Question q : kAllQuestions) {
      auto& bucket = r.condition == Condition::WithRc ? with : without;
      bucket[static_cast<std::size_t>(q)].push_back(r.score(q));
    }
  }
  auto mean = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  if (with[0].empty()) report.warnings.push_back("no w-RC questionnaires; tests skipped");
  if (without[0].empty()) report.warnings.push_back("no wo-RC questionnaires; tests skipped");
  for (const auto& w : report.warnings) spdlog::warn("{}", w);

  for (Question q : kAllQuestions) {
    const auto i = static_cast<std::size_t>(q);
    QuestionRow& row = report.rows[i];
    row.question = q;
    row.mean_with_rc = mean(with[i]);
    row.mean_without_rc = mean(without[i]);
    row.n_with_rc = with[i].size();
    row.n_without_rc = without[i].size();
    if (!with[i].empty() && !without[i].empty()) {
      row.test = wilcoxon_rank_sum(with[i], without[i]);
      row.significant = row.test->p_two_sided < kSignificanceLevel;
    }
  }
  return report;
}

std::string render_questionnaire(const QuestionnaireReport& report) {
  auto cell = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.2f}", *v) : std::string("n/a");
  };
  std::string out = fmt::format("{:<16}{:>8}{:>8}{:>10}\n", "", "w-RC", "wo-RC", "p");
  for (const auto& row : report.rows) {
    std::string p = row.test ? fmt::format("{:.3f}{}", row.test->p_two_sided,
                                           row.significant ? "*" : "")
                             : std::string("n/a");
    std::string name(to_string(row.question));
    for (auto& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out += fmt::format("{:<16}{:>8}{:>8}{:>10}\n", name, cell(row.mean_with_rc),
                       cell(row.mean_without_rc), p);
  }
  out += fmt::format("n = {} (w-RC), {} (wo-RC); * p < {}\n", report.rows[0].n_with_rc,
                     report.rows[0].n_without_rc, kSignificanceLevel);
  for (const auto& w : report.warnings) out += "warning: " + w + "\n";
  return out;
}

json to_json(const QuestionnaireReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"question", std::string(to_string(row.question))},
           {"n_w_rc", row.n_with_rc},
           {"n_wo_rc", row.n_without_rc},
           {"significant", row.significant}};
    r["mean_w_rc"] = row.mean_with_rc ? json(*row.mean_with_rc) : json(nullptr);
    r["mean_wo_rc"] = row.mean_without_rc ? json(*row.mean_without_rc) : json(nullptr);
    if (row.test) {
      r["u"] = row.test->u_statistic;
      r["z"] = row.test->z;
      r["p"] = row.test->p_two_sided;
      r["degenerate"] = row.test->degenerate;
    } else {
      r["p"] = nullptr;
    }
    rows.push_back(r);
  }
  return json{{"questions", rows}, {"warnings", report.warnings}};
}

}  // namespace uisdial::evaluation
