#include "dcbam/elicitation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dcbam/errors.hpp"

using namespace dcbam;

namespace {

RatingMatrix matrix(std::vector<std::vector<double>> ranks) {
  RatingMatrix m;
  m.ranks = std::move(ranks);
  return m;
}

// W from the mean pairwise Spearman correlation, W = ((m-1) rho_bar + 1) / m.
// Exact when no rater ties items; shares no code with kendalls_w.
double w_from_spearman(const std::vector<std::vector<double>>& ranks) {
  const double m = static_cast<double>(ranks.size());
  const double n = static_cast<double>(ranks[0].size());
  double rho_sum = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < ranks.size(); ++a) {
    for (std::size_t b = a + 1; b < ranks.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < ranks[a].size(); ++k) {
        d2 += (ranks[a][k] - ranks[b][k]) * (ranks[a][k] - ranks[b][k]);
      }
      rho_sum += 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
      ++pairs;
    }
  }
  return ((m - 1.0) * (rho_sum / pairs) + 1.0) / m;
}

std::vector<double> random_permutation_ranks(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> r(n);
  std::iota(r.begin(), r.end(), 1.0);
  std::shuffle(r.begin(), r.end(), rng);
  return r;
}

}  // namespace

TEST(KendallsW, IdenticalRankingsGiveOne) {
  EXPECT_DOUBLE_EQ(kendalls_w(matrix({{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}})), 1.0);
}

TEST(KendallsW, ReversedPairGivesZero) {
  for (int n = 2; n <= 9; ++n) {
    std::vector<double> up(static_cast<std::size_t>(n));
    std::iota(up.begin(), up.end(), 1.0);
    std::vector<double> down(up.rbegin(), up.rend());
    EXPECT_DOUBLE_EQ(kendalls_w(matrix({up, down})), 0.0) << "n=" << n;
  }
}

// Pinned before the build: rank sums (4, 6, 8), S = 8, W = 96 / 216 = 4/9.
// The Spearman route above gives the same value independently.
TEST(KendallsW, ThreeByThreeFixture) {
  const std::vector<std::vector<double>> ranks{{1, 2, 3}, {1, 3, 2}, {2, 1, 3}};
  EXPECT_NEAR(w_from_spearman(ranks), 4.0 / 9.0, 1e-12);
  EXPECT_NEAR(kendalls_w(matrix(ranks)), 0.44444444444444442, 1e-9);
}

TEST(KendallsW, TieCorrectionMatchesHandValue) {
  // rows (1.5, 1.5, 3), (1, 2, 3): rank sums 2.5, 3.5, 6; mean 4
  // S = 2.25 + 0.25 + 4 = 6.5; T = 2^3 - 2 = 6
  // W = 12 * 6.5 / (4 * 24 - 2 * 6) = 78 / 84
  EXPECT_NEAR(kendalls_w(matrix({{1.5, 1.5, 3}, {1, 2, 3}})), 78.0 / 84.0, 1e-12);
}

TEST(KendallsW, TooFewRatersOrItemsIsDomainError) {
  EXPECT_THROW(kendalls_w(matrix({{1, 2, 3}})), DomainError);
  EXPECT_THROW(kendalls_w(matrix({{1}, {1}})), DomainError);
}

TEST(KendallsW, InvalidRowsAreRejected) {
  EXPECT_THROW(kendalls_w(matrix({{1, 2, 3}, {1, 1, 4}})), ValidationError);  // sums fine, not a ranking
  EXPECT_THROW(kendalls_w(matrix({{1, 2, 3}, {1, 2}})), ValidationError);
  EXPECT_THROW(kendalls_w(matrix({{1, 2, 3}, {1, 2, 2}})), ValidationError);
}

TEST(KendallsW, AllTiedEverywhereIsUndefined) {
  EXPECT_THROW(kendalls_w(matrix({{2, 2, 2}, {2, 2, 2}})), DomainError);
}

TEST(MidRanks, AveragesTies) {
  EXPECT_EQ(mid_ranks({10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(ConcordanceProperties, RandomMatricesAgreeWithSpearmanRouteAndSymmetries) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + rng() % 6;
    const std::size_t n = 2 + rng() % 8;
    std::vector<std::vector<double>> ranks;
    for (std::size_t i = 0; i < m; ++i) ranks.push_back(random_permutation_ranks(n, rng));

    const double w = kendalls_w(matrix(ranks));
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
    EXPECT_NEAR(w, std::clamp(w_from_spearman(ranks), 0.0, 1.0), 1e-9);

    auto raters_shuffled = ranks;
    std::shuffle(raters_shuffled.begin(), raters_shuffled.end(), rng);
    EXPECT_NEAR(kendalls_w(matrix(raters_shuffled)), w, 1e-12);

    std::vector<std::size_t> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    auto items_shuffled = ranks;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) items_shuffled[i][k] = ranks[i][relabel[k]];
    }
    EXPECT_NEAR(kendalls_w(matrix(items_shuffled)), w, 1e-12);
  }
}

TEST(ConcordanceProperties, DuplicatingAgreeingRaterKeepsOne) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto row = random_permutation_ranks(2 + rng() % 7, rng);
    std::vector<std::vector<double>> ranks{row, row};
    for (int extra = 0; extra < 4; ++extra) {
      ranks.push_back(row);
      EXPECT_DOUBLE_EQ(kendalls_w(matrix(ranks)), 1.0);
    }
  }
}

TEST(ConsistencyReport, ThresholdIsInclusive) {
  EXPECT_EQ(consistency_report(1.0).verdict, ConsistencyVerdict::consistent);
  EXPECT_EQ(consistency_report(0.0).verdict, ConsistencyVerdict::inconsistent);
  const auto edge = consistency_report(0.7, 0.7);
  EXPECT_EQ(edge.verdict, ConsistencyVerdict::consistent);
  EXPECT_DOUBLE_EQ(edge.w, 0.7);
  EXPECT_DOUBLE_EQ(edge.threshold, 0.7);
}

TEST(ConsistencyReport, OutOfRangeInputsAreDomainErrors) {
  EXPECT_THROW(consistency_report(0.5, 1.5), DomainError);
  EXPECT_THROW(consistency_report(0.5, -0.1), DomainError);
  EXPECT_THROW(consistency_report(1.2), DomainError);
}
