#include "dcbam/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#include "dcbam/canonical_json.hpp"
#include "dcbam/elicitation.hpp"
#include "dcbam/errors.hpp"
#include "dcbam/json_codec.hpp"
#include "dcbam/lattice.hpp"
#include "dcbam/portfolio.hpp"
#include "dcbam/project_io.hpp"

namespace dcbam::cli {

namespace {

// Flag combination that parses but makes no sense.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(text);
  while (std::getline(in, cell, sep)) {
    cell.erase(0, cell.find_first_not_of(" \t"));
    cell.erase(cell.find_last_not_of(" \t") + 1);
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& text, const char* flag) {
  std::vector<double> out;
  for (const auto& cell : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + cell + "' is not a number");
    }
  }
  return out;
}

struct LatticeFlags {
  std::optional<double> vs, u, d, r;
  std::optional<int> horizons;
  std::optional<std::string> convention, style;

  void attach(CLI::App* cmd) {
    cmd->add_option("--vs", vs, "Base system value V_s");
    cmd->add_option("--u", u, "Up factor");
    cmd->add_option("--d", d, "Down factor");
    cmd->add_option("--r", r, "Risk-free rate per step");
    cmd->add_option("--horizons", horizons, "Number of horizons T");
    cmd->add_option("--convention", convention, "paper-1minus | standard-1plus");
    cmd->add_option("--style", style, "european | american");
  }

  void apply(ValuationSettings& s) const {
    if (vs) s.v_s = *vs;
    if (u) s.u = *u;
    if (d) s.d = *d;
    if (r) s.r = *r;
    if (horizons) s.horizons = *horizons;
    if (convention) s.convention = parse_convention(*convention);
    if (style) s.style = parse_style(*style);
  }
};

struct PortfolioFlags {
  std::string portfolio;
  std::string base;
  std::optional<double> budget;
  bool dedup = false;
};

PortfolioValuationRequest build_request(const Project& project, const PortfolioFlags& pf,
                                        const LatticeFlags& lf) {
  auto request = default_request(project, resolve_portfolio(project, pf.portfolio));
  if (!pf.base.empty()) {
    const auto values = parse_numbers(pf.base, "--base");
    const auto& members = request.portfolio.dad_ids;
    if (values.size() != members.size()) {
      throw UsageError("--base gives " + std::to_string(values.size()) + " values for " +
                       std::to_string(members.size()) + " DADs");
    }
    request.base_values.clear();
    for (std::size_t i = 0; i < members.size(); ++i) request.base_values[members[i]] = values[i];
  }
  if (pf.budget) request.portfolio.budget = *pf.budget;
  request.dedup_shared_strategy_costs = pf.dedup;
  lf.apply(request.settings);
  return request;
}

std::string money(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

std::string text_valuation(const OptionValuation& v) {
  std::ostringstream os;
  os << "portfolio " << v.portfolio_id << "  S0=" << money(v.initial_value)
     << "  cost=" << money(v.exercise_cost) << "  (" << to_string(v.convention) << ", "
     << to_string(v.style) << ")\n";
  for (std::size_t t = 0; t < v.per_horizon_prices.size(); ++t) {
    os << "  f." << (t + 1) << " = " << money(v.per_horizon_prices[t]) << "\n";
  }
  os << "  total = " << money(v.total_price) << "\n";
  os << "  recommendation: " << to_string(v.recommendation) << "\n";
  return os.str();
}

struct Options {
  std::string project_path;
  bool json = false;
  std::string scenario;
  PortfolioFlags pf;
  LatticeFlags lf;
  std::string current;
  std::vector<std::string> candidates;
  std::vector<std::string> separate;
  double margin = kDefaultSwitchMargin;
  double epsilon = kDefaultAbandonEpsilon;
  std::string whatif_config;
  std::optional<double> lo, hi, step;
  unsigned threads = 0;
  std::string matrix_id;
  std::string csv_path;
  double threshold = kDefaultConcordanceThreshold;
  int horizon = 0;
  std::string format = "dot";
  std::string out_path;
};

std::string cmd_validate(const Options& o) {
  const auto project = load_project_file(o.project_path);
  if (o.json) {
    return canonical_dump({{"ok", true},
                           {"weights", "ok"},
                           {"dads", project.dads.size()},
                           {"portfolios", project.portfolios.size()}}) +
           "\n";
  }
  return "weights ok, " + std::to_string(project.dads.size()) + " DADs ok\n";
}

std::string cmd_rank(const Options& o) {
  const auto project = load_project_file(o.project_path);
  std::vector<DiversifiedDecision> candidates;
  if (o.scenario.empty()) {
    candidates = project.dads;
  } else {
    const auto& sc = project.scenario(o.scenario);
    if (sc.candidate_dads.empty()) {
      candidates = project.dads;
    } else {
      for (const auto& id : sc.candidate_dads) candidates.push_back(project.catalog().dad(id));
    }
  }
  const auto ranked = rank_dads(candidates, project.weights);
  if (o.json) {
    Json list = Json::array();
    for (const auto& r : ranked) {
      list.push_back({{"id", r.id},
                      {"benefit", r.benefit},
                      {"scaled_benefit", r.benefit * project.scale_factor},
                      {"effective_cost", r.effective_cost}});
    }
    return canonical_dump(list) + "\n";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    os << (i + 1) << ". " << ranked[i].id << "  benefit " << format_number(ranked[i].benefit)
       << "  cost " << format_number(ranked[i].effective_cost) << "\n";
  }
  return os.str();
}

std::string cmd_value(const Options& o) {
  const auto project = load_project_file(o.project_path);
  const auto request = build_request(project, o.pf, o.lf);
  const auto valuation = value_portfolio(request, project.catalog());
  if (o.json) return canonical_dump(valuation_report(request, valuation)) + "\n";
  return text_valuation(valuation);
}

std::string cmd_compare(const Options& o) {
  const auto project = load_project_file(o.project_path);
  const auto catalog = project.catalog();
  auto value = [&](const std::string& spec) {
    PortfolioFlags pf;
    pf.portfolio = spec;
    pf.dedup = o.pf.dedup;
    return value_portfolio(build_request(project, pf, o.lf), catalog);
  };
  auto current = value(o.current);
  std::vector<OptionValuation> candidates;
  for (const auto& c : o.candidates) candidates.push_back(value(c));
  std::vector<OptionValuation> separate;
  for (const auto& s : o.separate) separate.push_back(value(s));

  const auto decision = compare_portfolios(current, candidates, {o.margin, o.epsilon});
  current.recommendation = decision.recommendation;
  current.compared_against = decision.switch_to;
  std::optional<DiversificationDelta> delta;
  if (!separate.empty()) delta = diversification_delta(separate, current);

  if (o.json) {
    Json totals = Json::array();
    for (const auto& c : candidates) {
      totals.push_back({{"portfolio_id", c.portfolio_id}, {"total_price", c.total_price}});
    }
    Json doc = {{"current", {{"portfolio_id", current.portfolio_id},
                             {"total_price", current.total_price},
                             {"per_horizon_prices", current.per_horizon_prices}}},
                {"candidates", std::move(totals)},
                {"recommendation", to_string(decision.recommendation)},
                {"switch_to", decision.switch_to ? Json(*decision.switch_to) : Json(nullptr)},
                {"switch_margin", o.margin},
                {"abandon_epsilon", o.epsilon}};
    if (delta) {
      doc["diversification"] = {{"delta", delta->delta},
                                {"favourable", delta->favourable},
                                {"best_separate", *delta->best_separate}};
    }
    return canonical_dump(doc) + "\n";
  }
  std::ostringstream os;
  os << "current " << current.portfolio_id << " total " << money(current.total_price) << "\n";
  for (const auto& c : candidates) {
    os << "candidate " << c.portfolio_id << " total " << money(c.total_price) << "\n";
  }
  os << "recommendation: " << to_string(decision.recommendation);
  if (decision.switch_to) os << " -> " << *decision.switch_to;
  os << "\n";
  if (delta) {
    os << "diversification delta " << money(delta->delta) << " ("
       << (delta->favourable ? "favourable" : "unfavourable") << ")\n";
  }
  return os.str();
}

std::string cmd_whatif(const Options& o) {
  const auto project = load_project_file(o.project_path);
  PortfolioFlags pf = o.pf;
  SweepRange range;
  if (!o.whatif_config.empty()) {
    const auto& cfg = project.whatif_config(o.whatif_config);
    if (pf.portfolio.empty()) pf.portfolio = cfg.portfolio_id;
    range = cfg.range;
  }
  if (pf.portfolio.empty()) throw UsageError("whatif needs --portfolio or --config");
  if (o.lo) range.lo = *o.lo;
  if (o.hi) range.hi = *o.hi;
  if (o.step) range.step = *o.step;
  const auto request = build_request(project, pf, o.lf);
  const auto rows = whatif_sweep(request, project.catalog(), range, o.threads);
  if (o.json) return canonical_dump(whatif_report(request, range, rows)) + "\n";
  std::ostringstream os;
  os << "base_value,total_price,recommendation\n";
  for (const auto& row : rows) {
    os << format_number(row.base_value) << "," << money(row.total_price) << ","
       << to_string(row.recommendation) << "\n";
  }
  return os.str();
}

std::string cmd_kendall(const Options& o) {
  RatingMatrix matrix;
  if (!o.csv_path.empty()) {
    matrix = import_ratings_table(read_text_file(o.csv_path));
  } else {
    if (o.project_path.empty()) throw UsageError("kendall needs a project or --csv");
    const auto project = load_project_file(o.project_path);
    if (o.matrix_id.empty()) {
      if (project.rating_matrices.size() != 1) {
        throw UsageError("project has " + std::to_string(project.rating_matrices.size()) +
                         " rating matrices; pick one with --matrix");
      }
      matrix = project.rating_matrices.front();
    } else {
      matrix = project.rating_matrix(o.matrix_id);
    }
  }
  const auto report = consistency_report(kendalls_w(matrix), o.threshold);
  if (o.json) return canonical_dump(consistency_to_json(report)) + "\n";
  return "W = " + format_number(report.w) + " (" + to_string(report.verdict) + " at threshold " +
         format_number(report.threshold) + ")\n";
}

std::string cmd_export_tree(const Options& o) {
  const auto project = load_project_file(o.project_path);
  const auto request = build_request(project, o.pf, o.lf);
  const auto valuation = value_portfolio(request, project.catalog());
  const int horizon = o.horizon == 0 ? valuation.horizons : o.horizon;
  if (horizon < 1 || horizon > valuation.horizons) {
    throw UsageError("--horizon must lie in 1.." + std::to_string(valuation.horizons));
  }
  const auto& grid = valuation.grids[static_cast<std::size_t>(horizon - 1)];
  std::string text;
  if (o.format == "dot") {
    text = lattice_to_dot(grid, valuation.portfolio_id + "_t" + std::to_string(horizon));
  } else if (o.format == "json") {
    text = canonical_dump(lattice_to_json(grid)) + "\n";
  } else {
    throw UsageError("--format must be dot or json");
  }
  if (o.out_path.empty()) return text;
  write_text_file_atomic(o.out_path, text);
  return "";
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Diversified cost-benefit analysis with real options", "dcbam"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all");

  auto add_project = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("project", o.project_path, "Project file (.dcbam.json)");
    if (required) opt->required();
    cmd->add_flag("--json", o.json, "Machine-readable JSON on stdout");
  };
  auto add_portfolio = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--portfolio", o.pf.portfolio,
                                "Stored portfolio id or comma-separated DAD ids");
    if (required) opt->required();
    cmd->add_option("--base", o.pf.base, "Comma-separated DAD base values, one per member");
    cmd->add_option("--budget", o.pf.budget, "Budget override");
    cmd->add_flag("--dedup", o.pf.dedup, "Charge strategies shared by members only once");
    o.lf.attach(cmd);
  };

  auto* validate = app.add_subcommand("validate", "Check every invariant of a project file");
  add_project(validate);

  auto* rank = app.add_subcommand("rank", "Rank DADs by weighted benefit");
  add_project(rank);
  rank->add_option("--scenario", o.scenario, "Restrict to a scenario's shortlisted DADs");

  auto* value = app.add_subcommand("value", "Value a portfolio over every horizon");
  add_project(value);
  add_portfolio(value, true);

  auto* compare = app.add_subcommand("compare", "Recommend switch, wait or abandon");
  add_project(compare);
  compare->add_option("--current", o.current, "Portfolio currently held")->required();
  compare->add_option("--candidate", o.candidates, "Alternative portfolio (repeatable)");
  compare->add_option("--separate", o.separate,
                      "Separately valued parts of --current (repeatable); reports the "
                      "diversification delta");
  compare->add_option("--margin", o.margin, "Switch margin as a fraction");
  compare->add_option("--epsilon", o.epsilon, "Abandon threshold in monetary units");
  compare->add_flag("--dedup", o.pf.dedup, "Charge strategies shared by members only once");
  o.lf.attach(compare);

  auto* whatif = app.add_subcommand("whatif", "Sweep the DAD base value");
  add_project(whatif);
  add_portfolio(whatif, false);
  whatif->add_option("--config", o.whatif_config, "Stored what-if configuration");
  whatif->add_option("--lo", o.lo, "Lowest base value (default 300)");
  whatif->add_option("--hi", o.hi, "Highest base value (default 2200)");
  whatif->add_option("--step", o.step, "Grid step (default 100)");
  whatif->add_option("--threads", o.threads, "Worker threads, 0 = all cores");

  auto* kendall = app.add_subcommand("kendall", "Kendall's W over a rating matrix");
  add_project(kendall, false);
  kendall->add_option("--matrix", o.matrix_id, "Rating matrix id in the project");
  kendall->add_option("--csv", o.csv_path, "Ratings CSV instead of a project matrix");
  kendall->add_option("--threshold", o.threshold, "Consistency threshold");

  auto* export_tree = app.add_subcommand("export-tree", "Write a valued lattice as DOT or JSON");
  add_project(export_tree);
  add_portfolio(export_tree, true);
  export_tree->add_option("--horizon", o.horizon, "Horizon to export (default T)");
  export_tree->add_option("--format", o.format, "dot | json");
  export_tree->add_option("--out", o.out_path, "Output path (default stdout)");

  CommandResult result;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? kExitOk : kExitUsage;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    std::string text;
    if (*validate) text = cmd_validate(o);
    else if (*rank) text = cmd_rank(o);
    else if (*value) text = cmd_value(o);
    else if (*compare) text = cmd_compare(o);
    else if (*whatif) text = cmd_whatif(o);
    else if (*kendall) text = cmd_kendall(o);
    else if (*export_tree) text = cmd_export_tree(o);
    result.out = std::move(text);
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string("usage error: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = kExitValidation;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace dcbam::cli
