#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uisdial/domain/errors.h"

namespace uisdial::agreement {

// alpha is undefined: no pairable values or zero expected disagreement.
class DegenerateDataError : public Error {
 public:
  explicit DegenerateDataError(const std::string& message) : Error("degenerate_data", message) {}
};

struct ReliabilityUnit {
  std::string unit_id;
  std::vector<std::optional<int>> ratings;  // one slot per coder; nullopt = missing
};

struct ReliabilityMatrix {
  std::vector<ReliabilityUnit> units;
  std::vector<int> value_domain = {-1, 0, 1};  // ascending
};

struct AlphaResult {
  double alpha = 0.0;
  double observed_disagreement = 0.0;
  double expected_disagreement = 0.0;
  std::size_t n_pairable = 0;  // number of values in units with >= 2 ratings
};

// Krippendorff's alpha with the ordinal difference function
//   delta^2(c, k) = (sum_{g=c..k} n_g - (n_c + n_k) / 2)^2
// over the coincidence matrix. Each unit with m >= 2 ratings contributes
// 1 / (m - 1) per ordered pair of its values. Units with fewer than two
// ratings are ignored.
AlphaResult krippendorff_alpha_ordinal(const ReliabilityMatrix& matrix);

// Ordinal squared difference between domain positions c and k given the
// value marginals n_g.
double ordinal_delta2(std::size_t c, std::size_t k, const std::vector<double>& marginals);

}  // namespace uisdial::agreement
