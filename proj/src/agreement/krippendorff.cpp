#include "uisdial/agreement/krippendorff.h"

#include <algorithm>

namespace uisdial::agreement {

double ordinal_delta2(std::size_t c, std::size_t k, const std::vector<double>& marginals) {
  if (c == k) return 0.0;
  const std::size_t lo = std::min(c, k);
  const std::size_t hi = std::max(c, k);
  double sum = 0.0;
  for (std::size_t g = lo; g <= hi; ++g) sum += marginals[g];
  const double d = sum - (marginals[lo] + marginals[hi]) / 2.0;
  return d * d;
}

AlphaResult krippendorff_alpha_ordinal(const ReliabilityMatrix& matrix) {
  const auto& domain = matrix.value_domain;
  if (domain.empty()) throw ValidationError("value domain is empty");
  if (!std::is_sorted(domain.begin(), domain.end()) ||
      std::adjacent_find(domain.begin(), domain.end()) != domain.end()) {
    throw ValidationError("value domain must be strictly ascending");
  }
  std::size_t coders = 0;
  for (const auto& u : matrix.units) coders = std::max(coders, u.ratings.size());
  if (coders < 2) throw ValidationError("reliability data needs at least two coders");

  auto position = [&](int value, const std::string& unit_id) {
    const auto it = std::lower_bound(domain.begin(), domain.end(), value);
    if (it == domain.end() || *it != value) {
      throw ValidationError("unit '" + unit_id + "': rating " + std::to_string(value) +
                            " outside the value domain");
    }
    return static_cast<std::size_t>(it - domain.begin());
  };

  const std::size_t v = domain.size();
  std::vector<double> coincidence(v * v, 0.0);
  std::vector<std::size_t> values;
  for (const auto& unit : matrix.units) {
    values.clear();
    for (const auto& r : unit.ratings) {
      if (r) values.push_back(position(*r, unit.unit_id));
    }
    if (values.size() < 2) continue;
    const double weight = 1.0 / static_cast<double>(values.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (i != j) coincidence[values[i] * v + values[j]] += weight;
      }
    }
  }

  std::vector<double> marginals(v, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < v; ++c) {
    for (std::size_t k = 0; k < v; ++k) marginals[c] += coincidence[c * v + k];
    n += marginals[c];
  }
  if (n < 2.0) throw DegenerateDataError("no unit has two or more ratings");

  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < v; ++c) {
    for (std::size_t k = 0; k < v; ++k) {
      const double d2 = ordinal_delta2(c, k, marginals);
      observed += coincidence[c * v + k] * d2;
      expected += marginals[c] * marginals[k] * d2;
    }
  }
  observed /= n;
  expected /= n * (n - 1.0);
  if (expected <= 0.0) {
    throw DegenerateDataError("all pairable ratings are identical; alpha is undefined");
  }

  AlphaResult result;
  result.observed_disagreement = observed;
  result.expected_disagreement = expected;
  result.n_pairable = static_cast<std::size_t>(n + 0.5);
  result.alpha = observed == 0.0 ? 1.0 : 1.0 - observed / expected;
  return result;
}

}  // namespace uisdial::agreement
