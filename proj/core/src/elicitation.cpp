#include "dcbam/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dcbam/errors.hpp"

namespace dcbam {

namespace {
constexpr double kRankTolerance = 1e-9;
}

std::vector<double> mid_ranks(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // positions i..j (0-based) share the average of ranks i+1..j+1
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

void validate_rating_matrix(const RatingMatrix& ratings) {
  const std::size_t m = ratings.rater_count();
  const std::size_t n = ratings.item_count();
  if (m < 2) throw DomainError("concordance needs at least 2 raters, got " + std::to_string(m));
  if (n < 2) throw DomainError("concordance needs at least 2 items, got " + std::to_string(n));
  if (!ratings.items.empty() && ratings.items.size() != n) {
    throw ValidationError("rating matrix has " + std::to_string(ratings.items.size()) +
                          " item labels for " + std::to_string(n) + " columns");
  }
  if (!ratings.raters.empty() && ratings.raters.size() != m) {
    throw ValidationError("rating matrix has " + std::to_string(ratings.raters.size()) +
                          " rater labels for " + std::to_string(m) + " rows");
  }
  const double expected_sum = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = ratings.ranks[i];
    const std::string where = "rater " + std::to_string(i + 1);
    if (row.size() != n) {
      throw ValidationError(where + " ranks " + std::to_string(row.size()) + " items, expected " +
                            std::to_string(n));
    }
    double sum = 0.0;
    for (double r : row) {
      if (!std::isfinite(r) || r < 1.0 || r > static_cast<double>(n)) {
        throw ValidationError(where + " has a rank outside [1, " + std::to_string(n) + "]");
      }
      sum += r;
    }
    if (std::abs(sum - expected_sum) > kRankTolerance * expected_sum) {
      throw ValidationError(where + " ranks do not sum to n(n+1)/2");
    }
    // A row is a ranking iff ranking its own values reproduces it.
    const auto reranked = mid_ranks(row);
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(reranked[k] - row[k]) > kRankTolerance) {
        throw ValidationError(where + " is not a valid mid-rank ranking");
      }
    }
  }
}

double kendalls_w(const RatingMatrix& ratings) {
  validate_rating_matrix(ratings);
  const auto m = static_cast<double>(ratings.rater_count());
  const std::size_t n_items = ratings.item_count();
  const auto n = static_cast<double>(n_items);

  std::vector<double> rank_sums(n_items, 0.0);
  double tie_term = 0.0;
  for (const auto& row : ratings.ranks) {
    for (std::size_t k = 0; k < n_items; ++k) rank_sums[k] += row[k];
    auto sorted = row;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < n_items) {
      std::size_t j = i;
      while (j + 1 < n_items && sorted[j + 1] == sorted[i]) ++j;
      const auto t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  const double mean = m * (n + 1.0) / 2.0;
  double s = 0.0;
  for (double rs : rank_sums) s += (rs - mean) * (rs - mean);

  const double denom = m * m * (n * n * n - n) - m * tie_term;
  if (denom <= 0.0) {
    throw DomainError("every rater tied all items; concordance is undefined");
  }
  return std::clamp(12.0 * s / denom, 0.0, 1.0);
}

ConsistencyReport consistency_report(double w, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw DomainError("concordance threshold must lie in [0, 1]");
  }
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("concordance W must lie in [0, 1]");
  return {w, threshold,
          w >= threshold ? ConsistencyVerdict::consistent : ConsistencyVerdict::inconsistent};
}

const char* to_string(ConsistencyVerdict verdict) noexcept {
  return verdict == ConsistencyVerdict::consistent ? "consistent" : "inconsistent";
}

}  // namespace dcbam
