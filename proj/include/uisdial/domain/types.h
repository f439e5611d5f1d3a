#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uisdial {

// Table order is always Knowledge, Interest, Engagement.
enum class UisKind : std::uint8_t { Knowledge = 0, Interest = 1, Engagement = 2 };

inline constexpr std::array<UisKind, 3> kAllKinds = {UisKind::Knowledge, UisKind::Interest,
                                                     UisKind::Engagement};

constexpr std::size_t index_of(UisKind kind) { return static_cast<std::size_t>(kind); }

std::string_view to_string(UisKind kind);
UisKind parse_uis_kind(std::string_view text);

inline constexpr double kScoreMin = -3.0;
inline constexpr double kScoreMax = 3.0;

// A real score on the 7-point axis. Construction clamps to [-3, 3] and
// rejects NaN, so every live instance satisfies the range invariant.
class UisScore {
 public:
  UisScore(UisKind kind, double value);

  UisKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

  friend bool operator==(const UisScore&, const UisScore&) = default;

 private:
  UisKind kind_;
  double value_;
};

enum class Judgment : std::uint8_t { Has, Neutral, HasNot };

std::string_view to_string(Judgment judgment);
Judgment parse_judgment(std::string_view text);

// S1 opening pattern: T1 entertainment news, T2 movie theme, T3 person.
enum class S1Pattern : std::uint8_t { T1, T2, T3 };

std::string_view to_string(S1Pattern pattern);
S1Pattern parse_s1_pattern(std::string_view text);

enum class Role : std::uint8_t { System, User };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

enum class Slot : std::uint8_t { S1, S2, S3, S4, S5, InitialQuestion, ProfileInsert };

std::string_view to_string(Slot slot);
Slot parse_slot(std::string_view text);

struct Utterance {
  Role role = Role::System;
  std::string text;
  int turn_index = 1;
  std::optional<Slot> scenario_slot;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Throws ValidationError unless the sequence starts with System, alternates
// roles, has non-empty texts and strictly increasing positive turn indices.
void validate_transcript(const std::vector<Utterance>& turns);

}  // namespace uisdial
