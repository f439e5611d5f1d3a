#include "uisdial/domain/types.h"

#include <cmath>
#include <string>

#include "uisdial/domain/errors.h"

namespace uisdial {

std::string_view to_string(UisKind kind) {
  switch (kind) {
    case UisKind::Knowledge: return "knowledge";
    case UisKind::Interest: return "interest";
    case UisKind::Engagement: return "engagement";
  }
  return "?";
}

UisKind parse_uis_kind(std::string_view text) {
  for (auto kind : kAllKinds) {
    if (to_string(kind) == text) return kind;
  }
  throw ValidationError("unknown UIS kind '" + std::string(text) + "'");
}

UisScore::UisScore(UisKind kind, double value) : kind_(kind), value_(value) {
  if (std::isnan(value)) {
    throw ValidationError("UIS score for " + std::string(to_string(kind)) + " is NaN");
  }
  if (value_ < kScoreMin) value_ = kScoreMin;
  if (value_ > kScoreMax) value_ = kScoreMax;
}

std::string_view to_string(Judgment judgment) {
  switch (judgment) {
    case Judgment::Has: return "has";
    case Judgment::Neutral: return "neutral";
    case Judgment::HasNot: return "has_not";
  }
  return "?";
}

Judgment parse_judgment(std::string_view text) {
  if (text == "has") return Judgment::Has;
  if (text == "neutral") return Judgment::Neutral;
  if (text == "has_not") return Judgment::HasNot;
  throw ValidationError("unknown judgment '" + std::string(text) + "'");
}

std::string_view to_string(S1Pattern pattern) {
  switch (pattern) {
    case S1Pattern::T1: return "T1";
    case S1Pattern::T2: return "T2";
    case S1Pattern::T3: return "T3";
  }
  return "?";
}

S1Pattern parse_s1_pattern(std::string_view text) {
  if (text == "T1") return S1Pattern::T1;
  if (text == "T2") return S1Pattern::T2;
  if (text == "T3") return S1Pattern::T3;
  throw ValidationError("unknown S1 pattern '" + std::string(text) + "'");
}

std::string_view to_string(Role role) { return role == Role::System ? "system" : "user"; }

Role parse_role(std::string_view text) {
  if (text == "system") return Role::System;
  if (text == "user") return Role::User;
  throw ValidationError("unknown role '" + std::string(text) + "'");
}

std::string_view to_string(Slot slot) {
  switch (slot) {
    case Slot::S1: return "S1";
    case Slot::S2: return "S2";
    case Slot::S3: return "S3";
    case Slot::S4: return "S4";
    case Slot::S5: return "S5";
    case Slot::InitialQuestion: return "initial_question";
    case Slot::ProfileInsert: return "profile_insert";
  }
  return "?";
}

Slot parse_slot(std::string_view text) {
  for (auto slot : {Slot::S1, Slot::S2, Slot::S3, Slot::S4, Slot::S5, Slot::InitialQuestion,
                    Slot::ProfileInsert}) {
    if (to_string(slot) == text) return slot;
  }
  throw ValidationError("unknown scenario slot '" + std::string(text) + "'");
}

void validate_transcript(const std::vector<Utterance>& turns) {
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const auto& turn = turns[i];
    const Role expected = (i % 2 == 0) ? Role::System : Role::User;
    if (turn.role != expected) {
      throw ValidationError("turn " + std::to_string(turn.turn_index) + ": expected " +
                            std::string(to_string(expected)) + " utterance");
    }
    if (turn.text.empty()) {
      throw ValidationError("turn " + std::to_string(turn.turn_index) + ": empty text");
    }
    if (turn.turn_index < 1) {
      throw ValidationError("turn index must be positive");
    }
    if (i > 0 && turn.turn_index <= turns[i - 1].turn_index) {
      throw ValidationError("turn indices must increase (turn " + std::to_string(turn.turn_index) +
                            ")");
    }
  }
}

}  // namespace uisdial
