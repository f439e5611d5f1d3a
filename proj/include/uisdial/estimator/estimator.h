#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/domain/errors.h"
#include "uisdial/domain/types.h"

namespace uisdial::estimator {

struct ContextTurn {
  Role role = Role::System;
  std::string text;

  friend bool operator==(const ContextTurn&, const ContextTurn&) = default;
};

// Input for one estimate. context is reverse-chronological: context[0] is
// the system turn the target replies to.
struct EstimationRequest {
  UisKind kind = UisKind::Knowledge;
  std::string target;
  std::vector<ContextTurn> context;
  int turn_index = 0;  // 0 when unknown
  std::optional<S1Pattern> s1_pattern;

  friend bool operator==(const EstimationRequest&, const EstimationRequest&) = default;
};

// Builds a request from a chronological transcript prefix, keeping the
// `window` most recent turns.
EstimationRequest make_request(UisKind kind, std::string target,
                               const std::vector<Utterance>& chronological_context,
                               int window, int turn_index = 0,
                               std::optional<S1Pattern> s1_pattern = std::nullopt);

// The most recent system turn inside the first `window` entries.
const ContextTurn* last_system_turn(const EstimationRequest& request, int window);

struct Thresholds {
  double positive = 1.5;
  double negative = -1.5;
};

enum class Backend { Lexicon, Linear, External };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view text);

struct EstimatorConfig {
  Backend backend = Backend::Lexicon;
  std::array<Thresholds, 3> thresholds = {Thresholds{1.5, -1.5}, Thresholds{1.5, -1.5},
                                          Thresholds{1.0, -1.0}};
  int context_window = 10;

  const Thresholds& thresholds_for(UisKind kind) const { return thresholds[index_of(kind)]; }

  // Throws ValidationError unless positive > 0 > negative for every kind
  // and the window is non-negative.
  void validate() const;
};

// Strict comparisons: a score exactly on a threshold is Neutral.
Judgment judge(double score, const Thresholds& thresholds);
Judgment judge(const UisScore& score, const EstimatorConfig& config);

class EstimatorError : public Error {
 public:
  explicit EstimatorError(const std::string& message) : Error("estimator", message) {}
};

// A UIS regressor. Implementations hold one independent model per kind and
// dispatch on request.kind. estimate() must be safe to call concurrently.
class Estimator {
 public:
  virtual ~Estimator() = default;
  virtual UisScore estimate(const EstimationRequest& request) const = 0;
  virtual std::string name() const = 0;
};

}  // namespace uisdial::estimator
