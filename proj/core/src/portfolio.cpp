#include "dcbam/portfolio.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "dcbam/errors.hpp"

namespace dcbam {

LatticeSpec ValuationSettings::lattice_spec(double dad_base_total) const {
  return {v_s, dad_base_total, u, d, r, horizons, convention, style};
}

const char* to_string(Recommendation rec) noexcept {
  switch (rec) {
    case Recommendation::switch_:
      return "switch";
    case Recommendation::wait:
      return "wait";
    case Recommendation::abandon:
      return "abandon";
  }
  return "wait";
}

namespace {

void check_members(const Portfolio& portfolio, const DecisionCatalog& catalog) {
  if (portfolio.dad_ids.empty()) throw ValidationError("portfolio has no DADs");
  std::set<std::string> seen;
  for (const auto& id : portfolio.dad_ids) {
    if (!seen.insert(id).second) {
      throw ValidationError("portfolio lists DAD '" + id + "' more than once");
    }
    if (!catalog.has_dad(id)) throw ReferenceError(id, "portfolio");
  }
}

std::string display_id(const Portfolio& portfolio) {
  return portfolio.id.empty() ? portfolio_label(portfolio.dad_ids) : portfolio.id;
}

// Shared by value_portfolio and the sweep, which overrides the DAD total.
OptionValuation value_with_base_total(const PortfolioValuationRequest& request,
                                      const DecisionCatalog& catalog, double dad_base_total) {
  const BudgetReport budget = check_budget(request.portfolio, catalog);
  if (!budget.ok()) throw BudgetError(budget.total, budget.budget);

  const LatticeParams params(request.settings.lattice_spec(dad_base_total));
  OptionValuation out;
  out.portfolio_id = display_id(request.portfolio);
  out.dad_ids = request.portfolio.dad_ids;
  out.v_s = request.settings.v_s;
  out.dad_base_total = dad_base_total;
  out.initial_value = params.initial_value();
  out.exercise_cost = portfolio_exercise_cost(request, catalog);
  out.convention = params.convention();
  out.style = params.style();
  out.horizons = params.horizons();

  out.per_horizon_prices.reserve(static_cast<std::size_t>(out.horizons));
  out.grids.reserve(static_cast<std::size_t>(out.horizons));
  for (int t = 1; t <= out.horizons; ++t) {
    auto priced = value_option_single_horizon(params, out.exercise_cost, t);
    out.per_horizon_prices.push_back(priced.price);
    out.total_price += priced.price;
    out.grids.push_back(std::move(priced.grid));
  }
  out.t_step_price = out.per_horizon_prices.back();
  out.recommendation = compare_portfolios(out, {}).recommendation;
  return out;
}

}  // namespace

std::map<std::string, double> resolve_base_values(const PortfolioValuationRequest& request,
                                                  const DecisionCatalog& catalog) {
  const auto& members = request.portfolio.dad_ids;
  check_members(request.portfolio, catalog);
  std::map<std::string, double> resolved;
  if (request.base_values.empty()) {
    for (const auto& id : members) {
      const double seed = compute_benefit(catalog.dad(id), catalog.weights()).scaled_benefit;
      if (seed < 0.0) {
        throw ValidationError("DAD '" + id +
                              "' has a negative scaled benefit; supply an explicit base value");
      }
      resolved[id] = seed;
    }
    return resolved;
  }
  for (const auto& [id, value] : request.base_values) {
    if (std::find(members.begin(), members.end(), id) == members.end()) {
      throw ValidationError("base value given for '" + id + "', which is not in the portfolio");
    }
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError("base value of '" + id + "' must be a finite value >= 0");
    }
  }
  for (const auto& id : members) {
    auto it = request.base_values.find(id);
    if (it == request.base_values.end()) {
      throw ValidationError("portfolio member '" + id + "' has no base value");
    }
    resolved[id] = it->second;
  }
  return resolved;
}

double portfolio_exercise_cost(const PortfolioValuationRequest& request,
                               const DecisionCatalog& catalog) {
  check_members(request.portfolio, catalog);
  double cost = 0.0;
  std::map<std::string, int> uses;
  for (const auto& id : request.portfolio.dad_ids) {
    const auto& dad = catalog.dad(id);
    cost += dad.effective_cost();
    for (const auto& s : dad.strategies) ++uses[s];
  }
  if (!request.dedup_shared_strategy_costs) return cost;

  for (const auto& [strategy_id, count] : uses) {
    if (count < 2) continue;
    const auto& strategy = catalog.strategy(strategy_id);
    if (!strategy.raw_cost) {
      throw ValidationError("strategy '" + strategy_id +
                            "' is shared but has no standalone cost to de-duplicate");
    }
    cost -= (count - 1) * *strategy.raw_cost * catalog.scale_factor();
  }
  return std::max(0.0, cost);
}

OptionValuation value_portfolio(const PortfolioValuationRequest& request,
                                const DecisionCatalog& catalog) {
  double total = 0.0;
  for (const auto& [id, value] : resolve_base_values(request, catalog)) total += value;
  return value_with_base_total(request, catalog, total);
}

ComparisonResult compare_portfolios(const OptionValuation& current,
                                    std::span<const OptionValuation> candidates,
                                    const CompareOptions& options) {
  if (!(options.switch_margin >= 0.0) || !(options.abandon_epsilon >= 0.0)) {
    throw DomainError("switch margin and abandon epsilon must be >= 0");
  }
  for (const auto& c : candidates) {
    if (c.v_s != current.v_s || c.convention != current.convention ||
        c.horizons != current.horizons) {
      throw ValidationError("candidate '" + c.portfolio_id +
                            "' was valued under a different v_s, convention or horizon count");
    }
  }

  const bool all_zero =
      std::all_of(current.per_horizon_prices.begin(), current.per_horizon_prices.end(),
                  [](double p) { return p == 0.0; });
  if (current.total_price < options.abandon_epsilon || all_zero) {
    return {Recommendation::abandon, std::nullopt};
  }

  const OptionValuation* best = nullptr;
  for (const auto& c : candidates) {
    if (!(c.total_price - current.total_price > options.switch_margin * current.total_price)) {
      continue;
    }
    if (best == nullptr || c.total_price > best->total_price ||
        (c.total_price == best->total_price &&
         (c.exercise_cost < best->exercise_cost ||
          (c.exercise_cost == best->exercise_cost && c.portfolio_id < best->portfolio_id)))) {
      best = &c;
    }
  }
  if (best != nullptr) return {Recommendation::switch_, best->portfolio_id};
  return {Recommendation::wait, std::nullopt};
}

DiversificationDelta diversification_delta(std::span<const OptionValuation> separate,
                                           const OptionValuation& combined) {
  DiversificationDelta out;
  double best_total = 0.0;
  for (const auto& v : separate) {
    if (!out.best_separate || v.total_price > best_total) {
      best_total = v.total_price;
      out.best_separate = v.portfolio_id;
    }
  }
  out.delta = combined.total_price - best_total;
  out.favourable = out.delta > 0.0;
  return out;
}

std::size_t sweep_point_count(const SweepRange& range) {
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || !std::isfinite(range.step)) {
    throw DomainError("sweep range must be finite");
  }
  if (!(range.step > 0.0)) throw DomainError("sweep step must be > 0");
  if (range.lo > range.hi) throw DomainError("sweep range has lo > hi");
  if (range.lo < 0.0) throw DomainError("sweep base values must be >= 0");
  const double spans = (range.hi - range.lo) / range.step;
  return static_cast<std::size_t>(std::floor(spans + 1e-9)) + 1;
}

std::vector<WhatIfRow> whatif_sweep(const PortfolioValuationRequest& request,
                                    const DecisionCatalog& catalog, const SweepRange& range,
                                    unsigned threads) {
  const std::size_t count = sweep_point_count(range);
  check_members(request.portfolio, catalog);
  std::vector<WhatIfRow> rows(count);

  auto evaluate = [&](std::size_t i) {
    const double base = range.lo + static_cast<double>(i) * range.step;
    const auto v = value_with_base_total(request, catalog, base);
    rows[i] = {base, v.total_price, v.recommendation};
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) evaluate(i);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            evaluate(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace dcbam
