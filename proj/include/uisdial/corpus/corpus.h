#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/domain/annotation.h"
#include "uisdial/domain/rng.h"
#include "uisdial/domain/types.h"

namespace uisdial::corpus {

inline constexpr int kCorpusFormatVersion = 1;

// One annotated user utterance with the dialogue that preceded it.
struct AnnotatedUtterance {
  std::string dialogue_id;
  int turn_index = 2;
  std::string text;
  std::optional<S1Pattern> s1_pattern;
  std::vector<Utterance> context;  // chronological, starts with System
  std::array<LabelTriplet, 3> labels{};

  const LabelTriplet& label(UisKind kind) const { return labels[index_of(kind)]; }
  int score(UisKind kind) const { return scale7_from_triplet(label(kind)); }

  friend bool operator==(const AnnotatedUtterance&, const AnnotatedUtterance&) = default;
};

struct CorpusVariant {
  enum class Type { Full, Filtered };
  Type type = Type::Full;
  UisKind kind = UisKind::Knowledge;  // meaningful for Filtered only

  static CorpusVariant full() { return {}; }
  static CorpusVariant filtered(UisKind kind) { return {Type::Filtered, kind}; }
  std::string name() const;
};

// Parses one record; throws ValidationError. record_number is 1-based and
// only used in messages.
AnnotatedUtterance parse_record(const nlohmann::json& j, std::size_t record_number);
nlohmann::json to_json(const AnnotatedUtterance& record);

std::vector<AnnotatedUtterance> parse_corpus(std::istream& in);
std::vector<AnnotatedUtterance> load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const std::vector<AnnotatedUtterance>& records);
void save_corpus(const std::filesystem::path& path, const std::vector<AnnotatedUtterance>& records);

// Drops records whose labels for `kind` contain both 1 and -1.
std::vector<AnnotatedUtterance> filter_corpus(const std::vector<AnnotatedUtterance>& records,
                                              UisKind kind);

std::vector<AnnotatedUtterance> apply_variant(const std::vector<AnnotatedUtterance>& records,
                                              const CorpusVariant& variant);

struct SplitSpec {
  double train_frac = 0.8;
  double dev_frac = 0.1;
  double test_frac = 0.1;
  std::uint64_t seed = 0;
};

struct CorpusSplit {
  std::vector<AnnotatedUtterance> train;
  std::vector<AnnotatedUtterance> dev;
  std::vector<AnnotatedUtterance> test;
};

// Dialogue-level split. Dialogue ids are sorted, shuffled with the seed, and
// dev/test take floor(frac * N) dialogues each; train takes the rest.
// Record order inside each bucket follows the input.
CorpusSplit split_corpus(const std::vector<AnnotatedUtterance>& records, const SplitSpec& spec);

// Distinct dialogue ids in order of first appearance.
std::vector<std::string> dialogue_ids(const std::vector<AnnotatedUtterance>& records);

}  // namespace uisdial::corpus
