#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/corpus/corpus.h"
#include "uisdial/estimator/estimator.h"

namespace uisdial::estimator {

inline constexpr std::uint32_t kFeatureBits = 18;
inline constexpr std::uint32_t kFeatureDim = 1u << kFeatureBits;

// 64-bit FNV-1a; feature index = hash & (kFeatureDim - 1).
std::uint64_t fnv1a64(std::string_view bytes);

// Feature names before hashing:
//   "u:<w>"      target unigrams
//   "b:<w1> <w2>" target bigrams
//   "s:<w>"      unigrams of the most recent system turn within the window
//   "t:<n>"      turn index bucket, min(turn_index, 11); absent when unknown
//   "p:<T1|T2|T3>" S1 pattern of the scenario
std::vector<std::string> feature_names(const EstimationRequest& request, int context_window);

// Sorted, de-duplicated hashed indices; every active feature has value 1.
std::vector<std::uint32_t> extract_features(const EstimationRequest& request, int context_window);

// Ridge regression on hashed binary features for one UIS kind.
struct LinearModel {
  UisKind kind = UisKind::Knowledge;
  double bias = 0.0;
  std::vector<std::pair<std::uint32_t, double>> weights;  // sorted by index
  double l2 = 1.0;
  std::uint64_t seed = 0;
  int context_window = 10;

  // Clamped to [-3, 3].
  double predict(const EstimationRequest& request) const;

  nlohmann::json to_json() const;
  static LinearModel from_json(const nlohmann::json& j);

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct TrainConfig {
  std::vector<double> l2_grid = {0.01, 0.1, 1.0, 10.0};
  std::uint64_t seed = 0;
  int context_window = 10;
};

struct GridPoint {
  double l2 = 0.0;
  double selection_acc = 0.0;
  double selection_mse = 0.0;
};

struct TrainResult {
  LinearModel model;
  std::vector<GridPoint> grid;
  bool constant_labels = false;
};

// Fits one model per grid value by solving the regularized normal
// equations exactly (bias unregularized), then keeps the model with the best
// dev Acc (ties: lower dev MSE, then grid order). With an empty dev set the
// train set is used for selection. All-identical labels give a constant
// predictor and a warning. Throws ValidationError on an empty train set.
TrainResult train_linear(const std::vector<corpus::AnnotatedUtterance>& train,
                         const std::vector<corpus::AnnotatedUtterance>& dev, UisKind kind,
                         const TrainConfig& config);

// Request for a corpus record, as the engine would build it.
EstimationRequest request_from_record(const corpus::AnnotatedUtterance& record, UisKind kind,
                                      int context_window);

struct LinearBundle {
  std::array<std::optional<LinearModel>, 3> models;

  nlohmann::json to_json() const;
  static LinearBundle from_json(const nlohmann::json& j);
  std::string serialize() const;
  static LinearBundle load(const std::string& path);
  void save(const std::string& path) const;
};

class LinearEstimator final : public Estimator {
 public:
  // Throws ValidationError if any kind lacks a model.
  explicit LinearEstimator(LinearBundle bundle);

  UisScore estimate(const EstimationRequest& request) const override;
  std::string name() const override { return "linear"; }

 private:
  LinearBundle bundle_;
};

}  // namespace uisdial::estimator
