#include "dcbam/json_codec.hpp"

#include "dcbam/errors.hpp"
#include "dcbam/version.hpp"
#include "json_reader.hpp"

namespace dcbam {

using detail::ObjectReader;
using detail::child_path;
using detail::where;

namespace {

// Lattice constructors throw ValidationError without a location; give the
// enum parsers one.
template <typename Fn>
auto located(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ParseError(where(path), e.what());
  }
}

Json engine_block(DiscountConvention convention, ExerciseStyle style) {
  return {{"version", kEngineVersion},
          {"convention", to_string(convention)},
          {"style", to_string(style)}};
}

}  // namespace

Json lattice_spec_to_json(const LatticeSpec& spec) {
  return {{"vs", spec.v_s},
          {"s0_dad", spec.s0_dad},
          {"u", spec.u},
          {"d", spec.d},
          {"r", spec.r},
          {"horizons", spec.horizons},
          {"convention", to_string(spec.convention)},
          {"style", to_string(spec.style)}};
}

LatticeSpec lattice_spec_from_json(const Json& node, const std::string& path) {
  ObjectReader in(node, path, {"vs", "s0_dad", "u", "d", "r", "horizons", "convention", "style"});
  LatticeSpec spec;
  spec.v_s = in.number("vs");
  spec.s0_dad = in.number_or("s0_dad", 0.0);
  spec.u = in.number("u");
  spec.d = in.number("d");
  spec.r = in.number("r");
  spec.horizons = in.integer("horizons");
  const auto conv = in.string_or("convention", "paper-1minus");
  spec.convention = located(in.path("convention"), [&] { return parse_convention(conv); });
  const auto style = in.string_or("style", "european");
  spec.style = located(in.path("style"), [&] { return parse_style(style); });
  return spec;
}

Json request_to_json(const PortfolioValuationRequest& request) {
  const auto& s = request.settings;
  Json base = Json::object();
  for (const auto& [id, v] : request.base_values) base[id] = v;
  return {{"portfolio",
           {{"id", request.portfolio.id},
            {"dad_ids", request.portfolio.dad_ids},
            {"budget", request.portfolio.budget}}},
          {"base_values", std::move(base)},
          {"vs", s.v_s},
          {"u", s.u},
          {"d", s.d},
          {"r", s.r},
          {"horizons", s.horizons},
          {"convention", to_string(s.convention)},
          {"style", to_string(s.style)},
          {"dedup_shared_strategy_costs", request.dedup_shared_strategy_costs}};
}

PortfolioValuationRequest request_from_json(const Json& node, const std::string& path) {
  ObjectReader in(node, path,
                  {"portfolio", "base_values", "vs", "u", "d", "r", "horizons", "convention",
                   "style", "dedup_shared_strategy_costs"});
  PortfolioValuationRequest request;
  {
    ObjectReader p(in.get("portfolio"), in.path("portfolio"), {"id", "dad_ids", "budget"});
    request.portfolio.id = p.string_or("id", "");
    request.portfolio.dad_ids = p.strings("dad_ids");
    request.portfolio.budget = p.number("budget");
  }
  if (in.has("base_values")) {
    const auto& base = in.get("base_values");
    const auto base_path = in.path("base_values");
    if (!base.is_object()) throw ParseError(where(base_path), "expected an object");
    for (auto it = base.begin(); it != base.end(); ++it) {
      request.base_values[it.key()] =
          detail::as_number(it.value(), child_path(base_path, it.key()));
    }
  }
  auto& s = request.settings;
  s.v_s = in.number("vs");
  s.u = in.number("u");
  s.d = in.number("d");
  s.r = in.number("r");
  s.horizons = in.integer("horizons");
  const auto conv = in.string_or("convention", "paper-1minus");
  s.convention = located(in.path("convention"), [&] { return parse_convention(conv); });
  const auto style = in.string_or("style", "european");
  s.style = located(in.path("style"), [&] { return parse_style(style); });
  if (in.has("dedup_shared_strategy_costs")) {
    request.dedup_shared_strategy_costs = in.boolean("dedup_shared_strategy_costs");
  }
  return request;
}

Json valuation_report(const PortfolioValuationRequest& request, const OptionValuation& v) {
  return {{"engine", engine_block(v.convention, v.style)},
          {"request", request_to_json(request)},
          {"portfolio_id", v.portfolio_id},
          {"dad_ids", v.dad_ids},
          {"dad_base_total", v.dad_base_total},
          {"initial_value", v.initial_value},
          {"exercise_cost", v.exercise_cost},
          {"per_horizon_prices", v.per_horizon_prices},
          {"total_price", v.total_price},
          {"t_step_price", v.t_step_price},
          {"recommendation", to_string(v.recommendation)},
          {"compared_against", v.compared_against ? Json(*v.compared_against) : Json(nullptr)}};
}

Json whatif_report(const PortfolioValuationRequest& request, const SweepRange& range,
                   const std::vector<WhatIfRow>& rows) {
  Json table = Json::array();
  for (const auto& row : rows) {
    table.push_back({{"base_value", row.base_value},
                     {"total_price", row.total_price},
                     {"recommendation", to_string(row.recommendation)}});
  }
  return {{"engine", engine_block(request.settings.convention, request.settings.style)},
          {"request", request_to_json(request)},
          {"range", {{"lo", range.lo}, {"hi", range.hi}, {"step", range.step}}},
          {"rows", std::move(table)}};
}

SweepRange sweep_range_from_json(const Json& node, const std::string& path) {
  ObjectReader in(node, path, {"lo", "hi", "step"});
  SweepRange range;
  range.lo = in.number_or("lo", range.lo);
  range.hi = in.number_or("hi", range.hi);
  range.step = in.number_or("step", range.step);
  return range;
}

Json rating_matrix_to_json(const RatingMatrix& matrix) {
  return {{"id", matrix.id},
          {"items", matrix.items},
          {"raters", matrix.raters},
          {"ranks", matrix.ranks}};
}

RatingMatrix rating_matrix_from_json(const Json& node, const std::string& path) {
  ObjectReader in(node, path, {"id", "items", "raters", "ranks"});
  RatingMatrix m;
  m.id = in.string_or("id", "");
  if (in.has("items")) m.items = in.strings("items");
  if (in.has("raters")) m.raters = in.strings("raters");
  const auto ranks_path = in.path("ranks");
  const auto& rows = detail::as_array(in.get("ranks"), ranks_path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row_path = child_path(ranks_path, i);
    std::vector<double> row;
    for (std::size_t k = 0; k < detail::as_array(rows[i], row_path).size(); ++k) {
      row.push_back(detail::as_number(rows[i][k], child_path(row_path, k)));
    }
    m.ranks.push_back(std::move(row));
  }
  return m;
}

Json consistency_to_json(const ConsistencyReport& report) {
  return {{"w", report.w}, {"threshold", report.threshold}, {"verdict", to_string(report.verdict)}};
}

}  // namespace dcbam
