#include "uisdial/evaluation/metrics.h"

#include <array>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "uisdial/estimator/linear.h"

namespace uisdial::evaluation {

namespace {

// Absorbs representation error in gaps such as 1.4 - 0.9.
constexpr double kSlack = 1e-12;

std::array<std::size_t, 7> class_counts(std::span<const int> golds) {
  std::array<std::size_t, 7> counts{};
  for (int g : golds) {
    if (g < -3 || g > 3) throw ValidationError("gold score " + std::to_string(g) + " outside [-3, 3]");
    ++counts[static_cast<std::size_t>(g + 3)];
  }
  return counts;
}

}  // namespace

AccResult acc_metrics(std::span<const Prediction> predictions) {
  if (predictions.empty()) throw ValidationError("acc_metrics needs at least one prediction");
  std::size_t hits = 0;
  std::size_t broad_hits = 0;
  for (const auto& p : predictions) {
    if (p.gold < -3 || p.gold > 3) {
      throw ValidationError("gold score " + std::to_string(p.gold) + " outside [-3, 3]");
    }
    const double gap = std::abs(p.estimate - static_cast<double>(p.gold));
    if (gap <= kAccGap + kSlack) ++hits;
    if (gap <= kBroadAccGap + kSlack) ++broad_hits;
  }
  const auto n = static_cast<double>(predictions.size());
  return {static_cast<double>(hits) / n, static_cast<double>(broad_hits) / n, predictions.size()};
}

int majority_class(std::span<const int> golds) {
  if (golds.empty()) throw ValidationError("majority baseline of an empty set");
  const auto counts = class_counts(golds);
  std::size_t best = 6;
  for (std::size_t i = 7; i-- > 0;) {
    if (counts[i] > counts[best]) best = i;
  }
  return static_cast<int>(best) - 3;
}

double majority_baseline(std::span<const int> golds) {
  const int cls = majority_class(golds);
  const auto counts = class_counts(golds);
  return static_cast<double>(counts[static_cast<std::size_t>(cls + 3)]) /
         static_cast<double>(golds.size());
}

double majority_baseline(const std::vector<corpus::AnnotatedUtterance>& test_set, UisKind kind) {
  std::vector<int> golds;
  golds.reserve(test_set.size());
  for (const auto& r : test_set) golds.push_back(r.score(kind));
  return majority_baseline(golds);
}

MetricRow evaluate_estimator(const estimator::Estimator& est,
                             const std::vector<corpus::AnnotatedUtterance>& test_set, UisKind kind,
                             int context_window) {
  std::vector<Prediction> predictions;
  predictions.reserve(test_set.size());
  double sq = 0.0;
  for (const auto& r : test_set) {
    const auto request = estimator::request_from_record(r, kind, context_window);
    const double value = est.estimate(request).value();
    const int gold = r.score(kind);
    predictions.push_back({value, gold});
    sq += (value - gold) * (value - gold);
  }
  const auto acc = acc_metrics(predictions);
  MetricRow row;
  row.kind = kind;
  row.acc = acc.acc;
  row.broad_acc = acc.broad_acc;
  row.n = acc.n;
  row.majority_baseline = majority_baseline(test_set, kind);
  row.mse = sq / static_cast<double>(test_set.size());
  return row;
}

std::string render_metrics(const MetricReport& report) {
  std::string out = fmt::format("{:<12}{:>10}{:>10}{:>8}{:>10}{:>14}{:>10}\n", "UIS", "train",
                                "test", "n", "Acc(%)", "BroadAcc(%)", "Major(%)");
  for (const auto& row : report.rows) {
    std::string name(to_string(row.kind));
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += fmt::format("{:<12}{:>10}{:>10}{:>8}{:>10.1f}{:>14.1f}{:>10.1f}\n", name,
                       row.train_variant, row.test_variant, row.n, 100.0 * row.acc,
                       100.0 * row.broad_acc, 100.0 * row.majority_baseline);
  }
  return out;
}

nlohmann::json to_json(const MetricReport& report) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : report.rows) {
    j.push_back({{"kind", to_string(row.kind)},
                 {"train_variant", row.train_variant},
                 {"test_variant", row.test_variant},
                 {"acc", row.acc},
                 {"broad_acc", row.broad_acc},
                 {"n", row.n},
                 {"majority_baseline", row.majority_baseline},
                 {"mse", row.mse}});
  }
  return j;
}

}  // namespace uisdial::evaluation
