#include "uisdial/domain/annotation.h"

#include <string>

#include "uisdial/domain/errors.h"

namespace uisdial {

namespace {

void check_label(int value, int slot) {
  if (value < -1 || value > 1) {
    throw ValidationError("annotator a" + std::to_string(slot) + " label " + std::to_string(value) +
                          " is outside {-1, 0, 1}");
  }
}

}  // namespace

int scale7_from_triplet(int a1, int a2, int a3) {
  check_label(a1, 1);
  check_label(a2, 2);
  check_label(a3, 3);
  return a1 + a2 + a3;
}

bool is_conflicted(int a1, int a2, int a3) {
  check_label(a1, 1);
  check_label(a2, 2);
  check_label(a3, 3);
  const bool has_pos = a1 == 1 || a2 == 1 || a3 == 1;
  const bool has_neg = a1 == -1 || a2 == -1 || a3 == -1;
  return has_pos && has_neg;
}

}  // namespace uisdial
