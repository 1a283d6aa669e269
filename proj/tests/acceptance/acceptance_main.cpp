// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dcbam/cli.hpp"
#include "dcbam/decision_model.hpp"
#include "dcbam/elicitation.hpp"
#include "dcbam/errors.hpp"
#include "dcbam/json_codec.hpp"
#include "dcbam/lattice.hpp"
#include "dcbam/portfolio.hpp"
#include "dcbam/project_io.hpp"
#include "dcbam/service.hpp"
#include "gridstix.hpp"
#include "path_oracle.hpp"

using namespace dcbam;
using dcbam::testing::close_relative;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double budget_ms;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Outcome worked_cell() {
  Outcome o;
  const double s = initial_system_value(1750, std::vector<double>{1200});
  o.expect(std::abs(s - 2950) <= 1e-9, "initial value " + num(s));
  Lattice grid(1);
  grid.at(1, 1).s_value = s;
  const double payoff = terminal_payoffs(grid, 1125, 1)[1];
  o.expect(std::abs(payoff - 1825) <= 1e-9, "payoff " + num(payoff));
  return o;
}

Outcome gridstix_benefits() {
  Outcome o;
  const auto weights = dcbam::testing::gridstix_weights();
  o.expect(validate_qa_scores(weights).ok(), "weights rejected");
  const auto all = dcbam::testing::gridstix_dads();
  const std::vector<std::pair<int, double>> expected{{1, 59.5}, {3, 44.0}, {5, 61.5}, {7, 44.5}};
  std::vector<DiversifiedDecision> shortlist;
  for (const auto& [n, b] : expected) {
    const auto& dad = all[static_cast<std::size_t>(n - 1)];
    const double got = compute_benefit(dad, weights).benefit;
    o.expect(std::abs(got - b) <= 1e-9, dad.id + " benefit " + num(got));
    shortlist.push_back(dad);
  }
  std::vector<std::string> order;
  for (const auto& r : rank_dads(shortlist, weights)) order.push_back(r.id);
  o.expect(order == std::vector<std::string>{"DAD5", "DAD1", "DAD7", "DAD3"}, "rank order");
  return o;
}

Outcome no_arbitrage_gate() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int cases = 0;
  for (int i = 0; i < 1500; ++i, ++cases) {
    const double r = 0.2 * unit(rng);
    const double g = 1.0 + r;
    double u = 0;
    double d = 0;
    const int kind = static_cast<int>(rng() % 3);
    if (kind == 0) {  // d >= 1 + r
      d = g * (1.0 + 0.5 * unit(rng)) + (i % 7 == 0 ? 0.0 : 1e-12);
      if (i % 5 == 0) d = g;
      u = d + 0.01 + unit(rng);
    } else if (kind == 1) {  // u <= 1 + r
      u = g * (0.5 + 0.5 * unit(rng));
      if (i % 5 == 0) u = g;
      d = u * (0.1 + 0.8 * unit(rng));
    } else {  // strictly inside
      d = g * (0.05 + 0.94 * unit(rng));
      u = g * (1.0 + 1e-6 + unit(rng));
    }
    if (kind < 2) {
      bool rejected = false;
      try {
        risk_neutral_prob(u, d, r);
      } catch (const NoArbitrageError&) {
        rejected = true;
      }
      o.expect(rejected, "accepted u=" + num(u) + " d=" + num(d) + " r=" + num(r));
    } else {
      const double p = risk_neutral_prob(u, d, r);
      o.expect(p > 0.0 && p < 1.0, "p=" + num(p));
    }
  }
  o.expect(cases >= 1000, "too few cases");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int sets = 0;
  for (int i = 0; i < 240; ++i) {
    const double r = 0.08 * unit(rng);
    const double d = (1.0 + r) * (0.5 + 0.49 * unit(rng));
    const double u = (1.0 + r) * (1.01 + 0.8 * unit(rng));
    const double v_s = 2000.0 * unit(rng);
    const double s0 = 2000.0 * unit(rng);
    const double cost = (v_s + s0) * 1.6 * unit(rng);
    const auto conv = i % 2 ? DiscountConvention::paper_1minus : DiscountConvention::standard_1plus;
    const int horizons = 1 + i % 12;
    const LatticeParams params(
        LatticeSpec{v_s, s0, u, d, r, horizons, conv, ExerciseStyle::european});
    for (int t = 1; t <= horizons; ++t) {
      const double engine = value_option_single_horizon(params, cost, t).price;
      const double oracle = dcbam::testing::path_enumeration_price(
          v_s + s0, cost, u, d, r, t, conv == DiscountConvention::paper_1minus);
      o.expect(close_relative(engine, oracle, 1e-9),
               "T=" + std::to_string(t) + " engine " + num(engine) + " oracle " + num(oracle));
    }
    ++sets;
  }
  o.expect(sets >= 200, "too few sets");
  return o;
}

Outcome homogeneity() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto catalog = dcbam::testing::gridstix_catalog();
  const std::vector<std::vector<std::string>> portfolios{
      {"DAD1"}, {"DAD5"}, {"DAD7"}, {"DAD5", "DAD7"}, {"DAD1", "DAD3"}};

  for (int trial = 0; trial < 60; ++trial) {
    const double c = std::exp(6.0 * unit(rng) - 3.0);
    ValuationSettings base{200.0 + 3000.0 * unit(rng), 1.05 + 0.5 * unit(rng),
                           0.6 + 0.35 * unit(rng), 0.03 * unit(rng),
                           1 + static_cast<int>(rng() % 6),
                           trial % 2 ? DiscountConvention::paper_1minus
                                     : DiscountConvention::standard_1plus,
                           trial % 3 ? ExerciseStyle::european : ExerciseStyle::american};
    ValuationSettings scaled = base;
    scaled.v_s *= c;

    // Cost scales through the scale factor: factor-25 rescaling generalised.
    auto dads = dcbam::testing::gridstix_dads();
    for (auto& dad : dads) dad.scale_factor *= c;
    const DecisionCatalog scaled_catalog(catalog.weights(), dcbam::testing::gridstix_strategies(),
                                         dads, catalog.scale_factor() * c);

    std::vector<OptionValuation> plain, rescaled;
    for (const auto& ids : portfolios) {
      PortfolioValuationRequest req;
      req.portfolio.id = portfolio_label(ids);
      req.portfolio.dad_ids = ids;
      req.portfolio.budget = 1e12;
      for (const auto& id : ids) req.base_values[id] = 3000.0 * unit(rng);
      req.settings = base;
      plain.push_back(value_portfolio(req, catalog));

      for (auto& [id, v] : req.base_values) v *= c;
      req.settings = scaled;
      rescaled.push_back(value_portfolio(req, scaled_catalog));

      const auto& a = plain.back();
      const auto& b = rescaled.back();
      for (std::size_t t = 0; t < a.per_horizon_prices.size(); ++t) {
        const double want = c * a.per_horizon_prices[t];
        const double got = b.per_horizon_prices[t];
        const bool ok = want == 0.0 ? std::abs(got) <= 1e-9 * c : close_relative(got, want, 1e-9);
        o.expect(ok, "c=" + num(c) + " t=" + std::to_string(t + 1) + " " + num(got) + " vs " +
                         num(want));
      }
    }
    for (std::size_t i = 0; i < plain.size(); ++i) {
      std::vector<OptionValuation> others_a, others_b;
      for (std::size_t k = 0; k < plain.size(); ++k) {
        if (k == i) continue;
        others_a.push_back(plain[k]);
        others_b.push_back(rescaled[k]);
      }
      CompareOptions opts_a;
      CompareOptions opts_b;
      opts_b.abandon_epsilon = opts_a.abandon_epsilon * c;
      const auto ra = compare_portfolios(plain[i], others_a, opts_a);
      const auto rb = compare_portfolios(rescaled[i], others_b, opts_b);
      o.expect(ra.recommendation == rb.recommendation && ra.switch_to == rb.switch_to,
               "recommendation changed under c=" + num(c));
    }
  }
  return o;
}

Outcome dual_convention() {
  Outcome o;
  auto price = [](DiscountConvention c) {
    const LatticeParams p(LatticeSpec{0, 100, 1.2, 0.9, 0.05, 1, c, ExerciseStyle::european});
    return value_option_single_horizon(p, 100, 1).price;
  };
  const double paper = price(DiscountConvention::paper_1minus);
  const double standard = price(DiscountConvention::standard_1plus);
  o.expect(std::abs(paper - 10.5263) <= 1e-4, "paper-1minus " + num(paper));
  o.expect(std::abs(standard - 9.5238) <= 1e-4, "standard-1plus " + num(standard));
  return o;
}

Outcome abandon_switch() {
  Outcome o;
  const auto catalog = dcbam::testing::gridstix_catalog();
  const ValuationSettings settings{1750, 1.2, 0.9, 0.005, 3, DiscountConvention::paper_1minus,
                                   ExerciseStyle::european};
  auto value = [&](std::string id, std::vector<std::string> ids,
                   std::map<std::string, double> base, double v_s) {
    PortfolioValuationRequest req;
    req.portfolio = {std::move(id), std::move(ids), 3000, {}};
    req.base_values = std::move(base);
    req.settings = settings;
    req.settings.v_s = v_s;
    return value_portfolio(req, catalog);
  };
  // Worthless: S_0 u^T stays below the combined exercise cost.
  const auto dead = value("P157", {"DAD1", "DAD5", "DAD7"},
                          {{"DAD1", 300}, {"DAD5", 300}, {"DAD7", 300}}, 0);
  const auto strong = value("P5", {"DAD5"}, {{"DAD5", 1200}}, 0);
  const auto modest = value("P7", {"DAD7"}, {{"DAD7", 600}}, 0);

  bool all_zero = true;
  for (double p : dead.per_horizon_prices) all_zero = all_zero && p == 0.0;
  o.expect(all_zero && dead.total_price == 0.0, "near-zero portfolio priced " + num(dead.total_price));
  o.expect(strong.total_price > 100.0, "candidate total " + num(strong.total_price));

  const std::vector<OptionValuation> candidates{strong};
  o.expect(compare_portfolios(dead, candidates).recommendation == Recommendation::abandon,
           "zero-valued portfolio not abandoned");
  o.expect(dead.recommendation == Recommendation::abandon, "standalone zero not abandoned");

  o.expect(modest.total_price >= kDefaultAbandonEpsilon, "modest portfolio too small");
  const auto sw = compare_portfolios(modest, candidates);
  o.expect(sw.recommendation == Recommendation::switch_ && sw.switch_to == "P5",
           "no switch to the large candidate");

  const std::vector<OptionValuation> weaker{modest};
  o.expect(compare_portfolios(strong, weaker).recommendation == Recommendation::wait,
           "strong portfolio should hold");

  const std::vector<OptionValuation> separate{strong};
  const auto delta = diversification_delta(separate, dead);
  o.expect(!delta.favourable && delta.delta < 0, "diversification delta sign");
  return o;
}

Outcome kendall_fixtures() {
  Outcome o;
  auto matrix = [](std::vector<std::vector<double>> ranks) {
    RatingMatrix m;
    m.ranks = std::move(ranks);
    return m;
  };
  const double same = kendalls_w(matrix({{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}}));
  o.expect(std::abs(same - 1.0) <= 1e-12, "identical W=" + num(same));
  const double reversed = kendalls_w(matrix({{1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}}));
  o.expect(std::abs(reversed) <= 1e-12, "reversed W=" + num(reversed));
  // rank sums 4, 6, 8 about mean 6: S = 8, W = 12 * 8 / (9 * 24) = 4/9
  const double pinned = kendalls_w(matrix({{1, 2, 3}, {1, 3, 2}, {2, 1, 3}}));
  o.expect(std::abs(pinned - 0.44444444444444442) <= 1e-9, "3x3 W=" + num(pinned));
  return o;
}

Outcome round_trip_and_equivalence() {
  Outcome o;
  const auto path = dcbam::testing::fixture_path("gridstix.dcbam.json");
  const auto text = read_text_file(path);
  const auto once = save_project(load_project(text));
  o.expect(once == text, "save(load(fixture)) differs from the fixture");
  o.expect(save_project(load_project(once)) == once, "second round trip differs");

  service::Service api;
  const auto created =
      api.handle({"POST", "/v1/projects", Json{{"project", Json::parse(text)}}.dump()});
  o.expect(created.status == 201, "session create " + std::to_string(created.status));
  const std::string session = Json::parse(created.body)["session_id"];
  const auto project = load_project(text);
  for (const auto& pf : project.portfolios) {
    const auto cli = cli::run({"value", path, "--portfolio", pf.id, "--json"});
    const auto request = default_request(project, pf);
    const auto r = api.handle(
        {"POST", "/v1/projects/" + session + "/valuation", request_to_json(request).dump()});
    o.expect(cli.exit_code == 0 && r.status == 200, pf.id + " failed: " + cli.err + r.body);
    o.expect(cli.out == r.body, pf.id + " CLI and API JSON differ");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked cell: 1750 + 1200 = 2950, payoff vs 1125 = 1825", 1, worked_cell},
      {2, "GridStix weights, benefits and ranking", 10, gridstix_benefits},
      {3, "no-arbitrage gate over generated (u, d, r)", 0, no_arbitrage_gate},
      {4, "lattice equals path enumeration for T <= 12", 30000, oracle_equivalence},
      {5, "homogeneity of prices and recommendations", 0, homogeneity},
      {6, "one-step price under both discount conventions", 0, dual_convention},
      {7, "abandon / switch / wait ordinal behaviour", 0, abandon_switch},
      {8, "Kendall's W fixtures", 0, kendall_fixtures},
      {9, "project round trip and CLI / API equivalence", 0, round_trip_and_equivalence},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (outcome.ok && c.budget_ms > 0 && ms > c.budget_ms) {
      outcome.ok = false;
      outcome.detail = "took " + num(ms) + " ms, limit " + num(c.budget_ms) + " ms";
    }
    if (!outcome.ok) ++failures;
    std::printf("%s criterion %d: %s (%.2f ms)%s%s\n", outcome.ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), ms, outcome.ok ? "" : " -- ", outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
