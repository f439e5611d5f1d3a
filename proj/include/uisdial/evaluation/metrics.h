#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/corpus/corpus.h"
#include "uisdial/estimator/estimator.h"

namespace uisdial::evaluation {

inline constexpr double kAccGap = 0.5;
inline constexpr double kBroadAccGap = 1.5;

struct Prediction {
  double estimate = 0.0;
  int gold = 0;
};

struct AccResult {
  double acc = 0.0;        // fraction with |est - gold| <= 0.5
  double broad_acc = 0.0;  // fraction with |est - gold| <= 1.5
  std::size_t n = 0;
};

// Both gaps are inclusive. Throws ValidationError on an empty list or a
// gold score outside [-3, 3].
AccResult acc_metrics(std::span<const Prediction> predictions);

// Share of the most frequent gold score; ties go to the higher score.
double majority_baseline(std::span<const int> golds);
double majority_baseline(const std::vector<corpus::AnnotatedUtterance>& test_set, UisKind kind);
// The score the majority baseline predicts.
int majority_class(std::span<const int> golds);

struct MetricRow {
  UisKind kind = UisKind::Knowledge;
  std::string train_variant;  // e.g. "full"
  std::string test_variant;   // e.g. "filtered"
  double acc = 0.0;
  double broad_acc = 0.0;
  std::size_t n = 0;
  double majority_baseline = 0.0;
  double mse = 0.0;
};

// Runs the estimator over every test record for one kind.
MetricRow evaluate_estimator(const estimator::Estimator& estimator,
                             const std::vector<corpus::AnnotatedUtterance>& test_set, UisKind kind,
                             int context_window);

struct MetricReport {
  std::vector<MetricRow> rows;
};

std::string render_metrics(const MetricReport& report);
nlohmann::json to_json(const MetricReport& report);

}  // namespace uisdial::evaluation
