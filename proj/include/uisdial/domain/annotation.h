#pragma once

#include <array>

namespace uisdial {

// Three crowd annotators' labels for one UIS kind, each in {-1, 0, 1}.
struct LabelTriplet {
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;

  std::array<int, 3> values() const { return {a1, a2, a3}; }
  friend bool operator==(const LabelTriplet&, const LabelTriplet&) = default;
};

// Sum of the three labels, the 7-point annotation score in [-3, 3].
// Throws ValidationError naming the annotator slot that is out of range.
int scale7_from_triplet(int a1, int a2, int a3);
inline int scale7_from_triplet(const LabelTriplet& t) { return scale7_from_triplet(t.a1, t.a2, t.a3); }

// True when the triplet contains both a 1 and a -1.
bool is_conflicted(int a1, int a2, int a3);
inline bool is_conflicted(const LabelTriplet& t) { return is_conflicted(t.a1, t.a2, t.a3); }

}  // namespace uisdial
