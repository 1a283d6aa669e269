#pragma once

#include <string>
#include <vector>

namespace dcbam {

inline constexpr double kDefaultConcordanceThreshold = 0.7;

/// m raters x n items. Row i is rater i's ranking, 1..n, ties as mid-ranks.
struct RatingMatrix {
  std::string id;
  std::vector<std::string> items;   // optional column labels
  std::vector<std::string> raters;  // optional row labels
  std::vector<std::vector<double>> ranks;

  std::size_t rater_count() const noexcept { return ranks.size(); }
  std::size_t item_count() const noexcept { return ranks.empty() ? 0 : ranks.front().size(); }

  friend bool operator==(const RatingMatrix&, const RatingMatrix&) = default;
};

/// Mid-ranks (1-based, ties averaged) of `scores`, ascending.
std::vector<double> mid_ranks(const std::vector<double>& scores);

/// Throws DomainError when m < 2 or n < 2, ValidationError when a row is
/// ragged or is not a valid (mid-)ranking of n items.
void validate_rating_matrix(const RatingMatrix& ratings);

/// Tie-corrected Kendall coefficient of concordance, clamped to [0, 1].
///   W = 12 S / (m^2 (n^3 - n) - m T)
/// S: squared deviations of item rank-sums from their mean.
/// T: sum over raters and tie groups of (t^3 - t).
double kendalls_w(const RatingMatrix& ratings);

enum class ConsistencyVerdict { consistent, inconsistent };

struct ConsistencyReport {
  double w = 0.0;
  double threshold = kDefaultConcordanceThreshold;
  ConsistencyVerdict verdict = ConsistencyVerdict::inconsistent;
};

/// consistent iff w >= threshold. Both must lie in [0, 1] (DomainError).
ConsistencyReport consistency_report(double w,
                                     double threshold = kDefaultConcordanceThreshold);

const char* to_string(ConsistencyVerdict verdict) noexcept;

}  // namespace dcbam
