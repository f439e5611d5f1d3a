#include "uisdial/evaluation/wilcoxon.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uisdial/domain/errors.h"

namespace uisdial::evaluation {

namespace {

void check_sample(std::span<const double> s, const char* name) {
  if (s.empty()) throw ValidationError(std::string("rank-sum sample ") + name + " is empty");
  for (double v : s) {
    if (std::isnan(v)) throw ValidationError(std::string("rank-sum sample ") + name + " holds NaN");
  }
}

std::vector<double> pooled(std::span<const double> x, std::span<const double> y) {
  std::vector<double> all(x.begin(), x.end());
  all.insert(all.end(), y.begin(), y.end());
  return all;
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

RankSumResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y) {
  check_sample(x, "x");
  check_sample(y, "y");
  const auto all = pooled(x, y);
  const auto ranks = midranks(all);
  RankSumResult r;
  r.n = x.size();
  r.m = y.size();
  const double n = static_cast<double>(r.n);
  const double m = static_cast<double>(r.m);
  const double total = n + m;
  double rank_sum_x = 0.0;
  for (std::size_t i = 0; i < r.n; ++i) rank_sum_x += ranks[i];
  r.u_statistic = rank_sum_x - n * (n + 1.0) / 2.0;

  // Tie term: sum of t^3 - t over groups of equal values.
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double variance = n * m / 12.0 * ((total + 1.0) - ties / (total * (total - 1.0)));
  if (!(variance > 0.0)) {
    r.degenerate = true;
    r.z = 0.0;
    r.p_two_sided = 1.0;
    return r;
  }
  const double diff = r.u_statistic - n * m / 2.0;
  const double corrected = std::max(0.0, std::fabs(diff) - 0.5);
  r.z = std::copysign(corrected / std::sqrt(variance), diff);
  r.p_two_sided = std::min(1.0, std::erfc(std::fabs(r.z) / std::sqrt(2.0)));
  return r;
}

double exact_rank_sum_p(std::span<const double> x, std::span<const double> y) {
  check_sample(x, "x");
  check_sample(y, "y");
  const std::size_t n = x.size();
  const std::size_t total = n + y.size();
  if (total > kExactRankSumLimit) {
    throw ValidationError("exact rank-sum p supports at most " +
                          std::to_string(kExactRankSumLimit) + " values");
  }
  const auto ranks = midranks(pooled(x, y));
  double observed = 0.0;
  for (std::size_t i = 0; i < n; ++i) observed += ranks[i];
  const double center = static_cast<double>(n) * static_cast<double>(total + 1) / 2.0;
  const double observed_dev = std::fabs(observed - center) - 1e-9;

  std::uint64_t extreme = 0;
  std::uint64_t splits = 0;
  // Walk every n-subset of the pooled positions.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    double s = 0.0;
    for (std::size_t i : idx) s += ranks[i];
    ++splits;
    if (std::fabs(s - center) >= observed_dev) ++extreme;
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == total - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return static_cast<double>(extreme) / static_cast<double>(splits);
}

}  // namespace uisdial::evaluation
