#pragma once

// Values DAD portfolios as portfolios of call options over several
// horizons, compares them and classifies switch / wait / abandon.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcbam/decision_model.hpp"
#include "dcbam/lattice.hpp"

namespace dcbam {

inline constexpr double kDefaultSwitchMargin = 0.05;
inline constexpr double kDefaultAbandonEpsilon = 1.0;

/// Lattice inputs shared by every DAD in a valuation. The DAD seed comes
/// from the request's base values.
struct ValuationSettings {
  double v_s = 0.0;
  double u = 0.0;
  double d = 0.0;
  double r = 0.0;
  int horizons = 1;
  DiscountConvention convention = DiscountConvention::paper_1minus;
  ExerciseStyle style = ExerciseStyle::european;

  LatticeSpec lattice_spec(double dad_base_total) const;

  friend bool operator==(const ValuationSettings&, const ValuationSettings&) = default;
};

struct PortfolioValuationRequest {
  Portfolio portfolio;
  // Per-DAD initial values. Empty: each member's scaled benefit is used.
  std::map<std::string, double> base_values;
  ValuationSettings settings;
  // Extension: charge a strategy shared by several members only once.
  bool dedup_shared_strategy_costs = false;

  friend bool operator==(const PortfolioValuationRequest&,
                         const PortfolioValuationRequest&) = default;
};

enum class Recommendation { switch_, wait, abandon };

const char* to_string(Recommendation rec) noexcept;

struct OptionValuation {
  std::string portfolio_id;
  std::vector<std::string> dad_ids;
  double v_s = 0.0;
  double dad_base_total = 0.0;
  double initial_value = 0.0;  // S_0 = v_s + dad_base_total
  double exercise_cost = 0.0;
  std::vector<double> per_horizon_prices;
  double total_price = 0.0;
  double t_step_price = 0.0;  // diagnostic: the single T-step price
  std::vector<Lattice> grids;  // one per horizon 1..T
  Recommendation recommendation = Recommendation::wait;
  std::optional<std::string> compared_against;
  DiscountConvention convention = DiscountConvention::paper_1minus;
  ExerciseStyle style = ExerciseStyle::european;
  int horizons = 0;
};

struct CompareOptions {
  double switch_margin = kDefaultSwitchMargin;
  double abandon_epsilon = kDefaultAbandonEpsilon;
};

struct ComparisonResult {
  Recommendation recommendation = Recommendation::wait;
  std::optional<std::string> switch_to;  // set iff recommendation is switch
};

struct DiversificationDelta {
  double delta = 0.0;
  bool favourable = false;
  std::optional<std::string> best_separate;
};

struct SweepRange {
  double lo = 300.0;
  double hi = 2200.0;
  double step = 100.0;
};

struct WhatIfRow {
  double base_value = 0.0;
  double total_price = 0.0;
  Recommendation recommendation = Recommendation::wait;
};

/// Member base values after defaulting. Throws ValidationError when only
/// some members have values, a value is negative, or an id is foreign.
std::map<std::string, double> resolve_base_values(const PortfolioValuationRequest& request,
                                                  const DecisionCatalog& catalog);

/// Sum of member effective costs, less repeated strategy costs when
/// `dedup_shared_strategy_costs` is set.
double portfolio_exercise_cost(const PortfolioValuationRequest& request,
                               const DecisionCatalog& catalog);

/// Budget check, then one single-horizon price per t = 1..T summed into the
/// total. The standalone recommendation is wait or abandon.
OptionValuation value_portfolio(const PortfolioValuationRequest& request,
                                const DecisionCatalog& catalog);

/// abandon when the current total is below epsilon or every horizon priced
/// at zero; switch to the best candidate beating the current total by more
/// than the margin fraction; wait otherwise.
ComparisonResult compare_portfolios(const OptionValuation& current,
                                    std::span<const OptionValuation> candidates,
                                    const CompareOptions& options = {});

/// combined.total - max(separate totals). An empty `separate` set counts as 0.
DiversificationDelta diversification_delta(std::span<const OptionValuation> separate,
                                           const OptionValuation& combined);

/// Number of grid points lo, lo + step, ... <= hi. DomainError on a bad range.
std::size_t sweep_point_count(const SweepRange& range);

/// Revalues `request` with the portfolio's combined DAD base value set to
/// each grid point. Rows come back in ascending base order regardless of
/// `threads` (0 = hardware concurrency).
std::vector<WhatIfRow> whatif_sweep(const PortfolioValuationRequest& request,
                                    const DecisionCatalog& catalog, const SweepRange& range,
                                    unsigned threads = 1);

}  // namespace dcbam
