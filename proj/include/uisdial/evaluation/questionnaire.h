#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/evaluation/wilcoxon.h"

namespace uisdial::evaluation {

enum class Condition { WithRc, WithoutRc };

std::string_view to_string(Condition condition);  // "w-RC" / "wo-RC"
Condition parse_condition(std::string_view text);

enum class Question { Persuasiveness, Naturalness, Satisfaction };

inline constexpr std::array<Question, 3> kAllQuestions = {
    Question::Persuasiveness, Question::Naturalness, Question::Satisfaction};

std::string_view to_string(Question question);  // "persuasiveness", ...

inline constexpr int kLikertMin = 1;
inline constexpr int kLikertMax = 5;
inline constexpr double kSignificanceLevel = 0.05;

struct QuestionnaireRecord {
  std::string session_id;
  Condition condition = Condition::WithRc;
  int persuasiveness = 3;
  int naturalness = 3;
  int satisfaction = 3;

  int score(Question question) const;
  // Throws ValidationError on a Likert value outside [1, 5].
  void validate() const;

  friend bool operator==(const QuestionnaireRecord&, const QuestionnaireRecord&) = default;
};

nlohmann::json to_json(const QuestionnaireRecord& record);
QuestionnaireRecord questionnaire_from_json(const nlohmann::json& j);

// One JSON object per line; blank lines are skipped.
std::vector<QuestionnaireRecord> parse_questionnaires(std::istream& in);
std::vector<QuestionnaireRecord> load_questionnaires(const std::filesystem::path& path);

struct QuestionRow {
  Question question = Question::Naturalness;
  std::optional<double> mean_with_rc;
  std::optional<double> mean_without_rc;
  std::size_t n_with_rc = 0;
  std::size_t n_without_rc = 0;
  std::optional<RankSumResult> test;  // absent when a condition is missing
  bool significant = false;           // p < 0.05
};

struct QuestionnaireReport {
  std::array<QuestionRow, 3> rows;
  std::vector<std::string> warnings;
};

// Means per condition and a rank-sum test per question. A missing condition
// yields a partial report with a warning instead of an error.
QuestionnaireReport questionnaire_report(std::span<const QuestionnaireRecord> records);

std::string render_questionnaire(const QuestionnaireReport& report);
nlohmann::json to_json(const QuestionnaireReport& report);

}  // namespace uisdial::evaluation
