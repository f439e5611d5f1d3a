#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/estimator/estimator.h"

namespace uisdial::estimator {

struct LexiconEntry {
  std::string phrase;  // matched on word boundaries, case-insensitive
  double score = 0.0;
  // When set, the entry only applies if the most recent system utterance
  // contains this text (case-insensitive).
  std::optional<std::string> after;
};

// Phrase table per kind. The longest applicable phrase found in the target
// decides the score; no match scores 0.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::array<std::vector<LexiconEntry>, 3> entries);

  static const Lexicon& builtin();
  static Lexicon from_json(const nlohmann::json& j);
  static Lexicon load(const std::string& path);
  nlohmann::json to_json() const;

  double lookup(UisKind kind, const std::string& target, const std::string& last_system) const;

  const std::vector<LexiconEntry>& entries(UisKind kind) const { return entries_[index_of(kind)]; }

 private:
  std::array<std::vector<LexiconEntry>, 3> entries_;
};

// Pure function of (kind, target, most recent system utterance).
class LexiconEstimator final : public Estimator {
 public:
  explicit LexiconEstimator(Lexicon lexicon = Lexicon::builtin()) : lexicon_(std::move(lexicon)) {}

  UisScore estimate(const EstimationRequest& request) const override;
  std::string name() const override { return "lexicon"; }

 private:
  Lexicon lexicon_;
};

}  // namespace uisdial::estimator
