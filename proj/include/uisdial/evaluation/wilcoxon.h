#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uisdial::evaluation {

struct RankSumResult {
  double u_statistic = 0.0;  // U for x: R_x - n(n+1)/2
  double z = 0.0;
  double p_two_sided = 1.0;
  bool degenerate = false;  // every value identical; p is 1 by convention
  std::size_t n = 0;
  std::size_t m = 0;
};

// Average ranks (1-based) of the values, ties sharing their mean rank.
std::vector<double> midranks(std::span<const double> values);

// Two-sample rank-sum test. The p value uses the normal approximation with
// tie-corrected variance and a 0.5 continuity correction. Throws
// ValidationError if either sample is empty or holds a NaN.
RankSumResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y);

inline constexpr std::size_t kExactRankSumLimit = 24;

// Exact two-sided permutation p over every split of the pooled midranks:
// the share of splits whose |U - nm/2| is at least the observed one.
// Throws ValidationError when n + m exceeds kExactRankSumLimit.
double exact_rank_sum_p(std::span<const double> x, std::span<const double> y);

}  // namespace uisdial::evaluation
